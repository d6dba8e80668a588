"""
Contrats arithmétiques internes
Toute division du solveur et de la politique doit tomber juste
"""


class ContractViolation(AssertionError):
    """État interne corrompu (reste non nul, borne dépassée, état impossible)"""


def exact_div(numerator: int, denominator: int, site: str) -> int:
    """Division entière qui exige un reste nul"""
    if denominator <= 0:
        raise ContractViolation(f"{site}: diviseur non positif ({denominator})")
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise ContractViolation(f"{site}: reste non nul ({numerator} / {denominator})")
    return quotient


def require(condition: bool, message: str) -> None:
    """Lève ContractViolation si la condition est fausse"""
    if not condition:
        raise ContractViolation(message)
