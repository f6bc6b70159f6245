# src/algebra/ledger.py
# The fixed record of embedding, sign and normalization conventions.
# Every CLI report carries LEDGER.snapshot(); the constants below are pinned by
# calibration tests, so changing one without the others breaks the suite.

from dataclasses import asdict, dataclass

from sympy import QQ


@dataclass(frozen=True)
class ConventionLedger:
    wedge_embedding: str = "signed sum over S_p, no 1/p!"
    sym_embedding: str = "stored by tensor component; Sym monomials fully symmetrized, no 1/p!"
    alt_normalization: str = "signed sum over S_p, no 1/p!"
    ce_sign: str = "minus the standard alternating sum; (dx)(y) = -[y, x] on C^0"
    big_bracket: str = "{xi^i, E_j} = delta; {E_j, xi^i} = +delta (n=1), -delta (n=2); d = {mu, -}"
    schouten: str = "[[a, b]] = (-1)^p {a, d b} for a p-vector"
    twist: str = "delta' = delta + d lam; phi' = phi + {delta, lam} - 1/2 [[lam, lam]]"
    gauge_ode: str = "d alpha/dt = d lam + [alpha(t), lam]"
    associator_scale: str = "-1/4"
    cybe_kappa: str = "-4"
    dynamical_alt_sign: str = "-1"
    coisotropic_associator: str = "index,derived"
    version: int = 1

    def snapshot(self) -> dict:
        return asdict(self)

    @property
    def associator_factor(self):
        return _rational(self.associator_scale)

    @property
    def kappa(self):
        return _rational(self.cybe_kappa)

    @property
    def alt_sign(self):
        return _rational(self.dynamical_alt_sign)

    @property
    def associator_rules(self) -> tuple:
        """Order in which induced associator formulas are tried: index formula, then morphism-derived."""
        return tuple(r.strip() for r in self.coisotropic_associator.split(",") if r.strip())


def _rational(text: str):
    num, _, den = text.partition("/")
    return QQ(int(num), int(den or 1))


LEDGER = ConventionLedger()
