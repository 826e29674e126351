"""Picard-group data of forms of the affine line.

Everything here assembles previously computed invariants: the p^n torsion
bound on Pic, the boundary residue level r with its certificate chain, the
index m(X) of the degree map, and a consolidated report whose numeric
fields all carry exact-or-bound tags.  Structural facts that the artifact
cannot decide (woundness, splitting of the Picard scheme, specialness) are
emitted as tagged assertion strings, never as computed booleans.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .field import RatFunc, pn_power_test
from .forms import (
    FormPresentation,
    NValue,
    Torsor,
    _unpack,
    equation_holds,
    find_rational_point,
    rationality_level,
    rewrite_plane_model,
    splitting_field_degree,
    splitting_level,
)
from .wproj import (
    cech_h1_dim,
    genus_from_formula,
    is_regular_at_infinity,
    naive_completion,
    residue_from_plane_model,
)


class NotIrreducible(ValueError):
    """The defining constant is a p-th power, so the point splits."""


@dataclass(frozen=True)
class ReportOptions:
    search_bound: int = 2
    run_oracle: bool = False
    pole_bound: Optional[int] = None


@dataclass(frozen=True)
class ExactSeqData:
    """Data of 0 -> Pic0(C) -> Pic(X) -> m(X) Z/p^r Z -> 0."""

    r: NValue
    m_X: NValue
    pic0_dim: NValue
    quotient: Optional[tuple[int, int]]
    quotient_desc: str
    point: Optional[tuple[RatFunc, RatFunc]]


@dataclass(frozen=True)
class P1ComplementData:
    """Pic of the complement of one purely inseparable point on the line."""

    field: object
    e: int
    c: RatFunc
    pic_order: int
    pic_structure: str
    n: NValue
    n_prime: NValue
    r: NValue
    genus: int
    group_structure_on_separable_closure: bool
    notes: tuple[str, ...]


@dataclass(frozen=True)
class InvariantReport:
    target: Union[FormPresentation, Torsor]
    is_torsor: bool
    n: NValue
    n_prime: NValue
    r: NValue
    m_X: NValue
    splitting_degree: int
    genus: NValue
    genus_oracle: Optional[tuple[int, bool]]
    torsion_bound: int
    exact_seq: ExactSeqData
    pic_nontrivial: Optional[tuple[bool, str]]
    pic_group: Optional[str]
    point: Optional[tuple[RatFunc, RatFunc]]
    assertions: tuple[tuple[str, str], ...]
    flags: tuple[str, ...]


def torsion_bound(X) -> int:
    """p^n with n the certified splitting level; Pic(X) is p^n-torsion.

    When the level is only an upper bound the result bounds the true
    torsion exponent bound; invariant_report flags that degradation.
    """
    G = X.form if isinstance(X, Torsor) else X
    return G.field.p ** splitting_level(G).value


def torsion_bound_unipotent(p: int, d: int, n: int) -> int:
    """p^(d n) kills Pic of a d-dimensional unipotent group of level n."""
    if d < 1 or n < 0:
        raise ValueError("need d >= 1 and n >= 0")
    return p ** (d * n)


def pic_p1_complement(e: int, c: RatFunc) -> P1ComplementData:
    """Pic of the projective line minus the point x^(p^e) = c.

    The point is purely inseparable of degree p^e when c is not a p-th
    power; its complement is a form of the affine line with cyclic Picard
    group of that order, rational function field, and splitting level e.
    """
    if e < 1:
        raise ValueError("need e >= 1")
    field = c.field
    p = field.p
    if c.pth_root() is not None:
        raise NotIrreducible("c is a p-th power; x^(p^e) - c is not irreducible")
    order = p ** e
    notes = (
        f"torsion bound p^n = {order} is attained by the group Z/{order}Z",
        "the complement is an open of the projective line, so its function field is rational",
    )
    if order > 2:
        notes = notes + (
            "the removed point has degree > 2, so no group structure exists even after separable base change",
        )
    return P1ComplementData(
        field=field,
        e=e,
        c=c,
        pic_order=order,
        pic_structure=f"Z/{order}Z",
        n=NValue("exact", e, "inseparable-point-degree"),
        n_prime=NValue("exact", 0, "open-of-projective-line"),
        r=NValue("exact", e, "inseparable-point-degree"),
        genus=0,
        group_structure_on_separable_closure=order <= 2,
        notes=notes,
    )


def _residue_level(T) -> NValue:
    """The level r with deg of the boundary point = p^r, certified if possible.

    Chain: trivial presentations complete to the projective line (r = 0);
    regular naive completions read r off the boundary residue field; for
    n = m + 1 with a_m a p^m-th power, the plane-model rewrite with
    alpha = a_m^(1/p^m), s = 1 can expose a field residue ring; otherwise
    only r <= n is known.
    """
    field, n, coeffs, b = _unpack(T)
    m = len(coeffs) - 1
    if m == 0:
        return NValue("exact", 0, "trivial-presentation")
    C = naive_completion(T)
    inf = is_regular_at_infinity(C)
    if inf.is_field:
        return NValue("exact", inf.exponent, "regular-completion")
    if n > m:
        alpha = pn_power_test(coeffs[m], m)
        if alpha is not None:
            model = rewrite_plane_model(T, alpha, n - m)
            res = residue_from_plane_model(model)
            if res is not None and res.is_field:
                return NValue("exact", res.exponent, "plane-model-residue")
    return NValue("upper_bound", n)


def exact_sequence_data(X, search_bound: int = 2) -> ExactSeqData:
    """Assemble the degree exact sequence for a form or torsor.

    m(X) = 1 is certified by a found rational point (the zero section
    handles every form); without a point only m(X) | p^r is known.  The
    Pic0 dimension is the completed curve's genus, exact when the naive
    completion is regular and an upper bound otherwise.
    """
    field, n, coeffs, b = _unpack(X)
    p = field.p
    m = len(coeffs) - 1
    r = _residue_level(X)
    point = find_rational_point(X, search_bound)
    if point is not None:
        m_X = NValue("exact", 1, "rational-point")
    else:
        m_X = NValue("upper_bound", p ** r.value)
    if m == 0:
        pic0 = NValue("exact", 0, "projective-line")
    else:
        C = naive_completion(X)
        g = int(genus_from_formula(C))
        if is_regular_at_infinity(C).is_field:
            pic0 = NValue("exact", g, "regular-completion")
        elif g == 0:
            pic0 = NValue("exact", 0, "zero-upper-bound")
        else:
            pic0 = NValue("upper_bound", g)
    quotient = None
    if m_X.is_exact and r.is_exact:
        quotient = (p ** r.value, m_X.value)
        desc = f"Z/{p ** r.value}Z" if m_X.value == 1 else f"{m_X.value}*Z/{p ** r.value}Z"
    elif r.is_exact:
        desc = f"m*Z/{p ** r.value}Z with m | {p ** r.value}"
    else:
        desc = f"m*Z/p^rZ with r <= {r.value} and m | p^r"
    return ExactSeqData(r, m_X, pic0, quotient, desc, point)


def invariant_report(X, options: Optional[ReportOptions] = None) -> InvariantReport:
    """Run every invariant computation on a form or torsor and consolidate.

    The report never upgrades a bound to an exact value: each field keeps
    the tag produced by its own certificate chain, and derived statements
    (the assembled Picard group, nontriviality) fire only from fully
    certified inputs.
    """
    if options is None:
        options = ReportOptions()
    is_torsor = isinstance(X, Torsor)
    G = X.form if is_torsor else X
    field = G.field
    p = field.p
    n = splitting_level(G)
    deg = splitting_field_degree(G)
    nontrivial = deg > 1
    seq = exact_sequence_data(X, options.search_bound)
    point = seq.point
    if not is_torsor or point is not None:
        n_prime = rationality_level(G)
    else:
        n_prime = NValue("upper_bound", G.n)
    flags: list[str] = []
    if not n.is_exact:
        flags.append("torsion-bound-on-bound")
    genus = seq.pic0_dim
    genus_oracle = None
    if options.run_oracle and G.m >= 1:
        genus_oracle = cech_h1_dim(naive_completion(X), options.pole_bound)
        if not genus_oracle[1]:
            flags.append("cech-not-stabilized")
    pic_nontrivial: Optional[tuple[bool, str]] = None
    pic_group: Optional[str] = None
    if is_torsor and X.generic_fiber:
        flags.append("pic-trivial-by-construction")
        pic_nontrivial = (False, "generic fiber of its own defining projection; Pic vanishes by localization")
        pic_group = "0"
    elif point is not None and nontrivial:
        pic_nontrivial = (True, "rational point on a nontrivial form")
    if (
        pic_group is None
        and genus.is_exact
        and genus.value == 0
        and point is not None
        and seq.r.is_exact
    ):
        if nontrivial and seq.r.value >= 1:
            pic_group = f"Z/{p ** seq.r.value}Z"
        elif not nontrivial:
            pic_group = "0"
    if n.is_exact and n_prime.is_exact and seq.r.is_exact:
        if n.value < max(n_prime.value, seq.r.value):
            raise AssertionError("level inequality violated; invariant chain inconsistent")
    if m_ := seq.m_X:
        if m_.is_exact and seq.r.is_exact and (p ** seq.r.value) % m_.value != 0:
            raise AssertionError("m(X) does not divide p^r; invariant chain inconsistent")
    assertions: list[tuple[str, str]] = [
        (
            "Pic0 of the completed curve is smooth, connected, unipotent, "
            f"killed by p^n' = {p ** n_prime.value}"
            + (" (n' only a bound)" if not n_prime.is_exact else "")
            + ", wound over the base field, and split by the splitting field",
            "pic0-structure",
        ),
        (
            f"dim Pic0 <= {genus.value} (completed-curve genus"
            + (" bound" if not genus.is_exact else "")
            + ")",
            "pic0-dimension-bound",
        ),
    ]
    if nontrivial:
        assertions.append(
            ("the underlying group of the form is not special", "not-special")
        )
        assertions.append(
            ("the boundary point of the completion is not rational", "infinity-not-rational")
        )
    return InvariantReport(
        target=X,
        is_torsor=is_torsor,
        n=n,
        n_prime=n_prime,
        r=seq.r,
        m_X=seq.m_X,
        splitting_degree=deg,
        genus=genus,
        genus_oracle=genus_oracle,
        torsion_bound=p ** n.value,
        exact_seq=seq,
        pic_nontrivial=pic_nontrivial,
        pic_group=pic_group,
        point=point,
        assertions=tuple(assertions),
        flags=tuple(flags),
    )


def verify_paper_examples() -> list:
    """Run the worked-example catalogue; failures come back as data."""
    from .catalogue import run_catalogue

    return run_catalogue()
