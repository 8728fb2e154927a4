"""Intermediate checkpoints of the printed n=4 chain, asserted in-engine,
and the pinpoint of where the printed n=6 chain departs from its own
symbols. These position any future divergence at a specific formula rather
than an end-to-end mismatch."""
from fractions import Fraction

from hodgeres.boundary import _trace_product
from hodgeres.scalars import (GaussianRational, HPRIME, ScalarExpr, I_G)
from hodgeres.symbols import (CLIFF_ZERO, CliffordElem, boundary_data, c_xi,
                              sigma_order, xr)
from hodgeres.wick import C, DXN, XIP, parse_perturbation
from hodgeres.xirational import XiRational

A0 = parse_perturbation("0")
HP = ScalarExpr.tok(HPRIME)


def g(re=0, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


def sc(re=0, im=0, hp=False):
    e = ScalarExpr.const(g(re, im))
    return e * HP if hp else e


def scalarize(f: XiRational, n: int) -> XiRational:
    traced = _trace_product(xr([CliffordElem.scalar(1)], 0, 0), f, n)
    return traced.map_coeffs(lambda c: c.substitute_token(("tr_id", ()), 1 << n),
                             ScalarExpr.zero())


def b2_factor(n: int) -> XiRational:
    """B_2 = h' pi+[ c(xi) c(dxn) c(xi) / (1 + xi_n^2)^3 ]."""
    cxi = c_xi()
    cdxn = xr([CliffordElem.letter(C, DXN)], 0, 0)
    inner = (cxi * cdxn * cxi).scale(HP) * xr([CliffordElem.scalar(1)], 3, 3)
    return inner.pi_plus()


def b1_factor(n: int) -> XiRational:
    """B_1 - B_2 + B_2: pi+ of the b0^2 and d_xn c(xi') part of sigma_{-2}."""
    bd = boundary_data(n)
    cxi = c_xi()
    cdxn = xr([CliffordElem.letter(C, DXN)], 0, 0)
    dxc = xr([CliffordElem.letter(C, XIP, HP * Fraction(1, 2))], 0, 0)
    inner = (cxi * xr([bd.b02], 0, 0) * cxi + cxi * cdxn * dxc) * xr(
        [CliffordElem.scalar(1)], 2, 2)
    return inner.pi_plus()


def test_checkpoint_b2_times_dsigma1():
    """tr[B_2 x d_xin sigma_{-1}] = 8 i h'(0) (-i xi^2 - xi + 4i)
    / (4 (xi - i)^3 (xi + i)^2) at tr[id] = 16."""
    ds1 = sigma_order("INV_D_A", -1, A0, 4).dxi()
    got = scalarize(b2_factor(4) * ds1, 4)
    # 8i h' (-i xi^2 - xi + 4i)/4 = 2 h' xi^2 - 2i h' xi - 8 h'
    num = [sc(-8, 0, hp=True), sc(0, -2, hp=True), sc(2, 0, hp=True)]
    want = XiRational(num, 3, 2, ScalarExpr.zero())
    assert (got - want).is_zero()


def test_checkpoint_b1_times_dsigma1():
    """tr[B_1 x d_xin sigma_{-1}] = -8 i c_0/(1+xi^2)^2
    + 2 h'(xi^2 - i xi - 2)/((xi - i)(1 + xi^2)^2), c_0 = -(3/4) h'(0)."""
    ds1 = sigma_order("INV_D_A", -1, A0, 4).dxi()
    got = scalarize(b1_factor(4) * ds1, 4)
    c0 = sc(-3, 0, hp=True) * Fraction(1, 4)
    t1 = XiRational([c0 * g(0, -8)], 2, 2, ScalarExpr.zero())
    t2 = XiRational([sc(-4, 0, hp=True), sc(0, -2, hp=True), sc(2, 0, hp=True)],
                    3, 2, ScalarExpr.zero())
    want = t1 + t2
    assert (got - want).is_zero()


def test_checkpoint_b01_part_traces_to_zero():
    """The b0^1 block drops out: tr[pi+ sigma_{-1} x d_xin(c b0^1 c/|xi|^4)]
    vanishes identically (the printed chain keeps only tr[b0^1 c(xi')],
    which is zero pointwise)."""
    from hodgeres.symbols import dxn_of_xirational
    bd = boundary_data(4)
    cxi = c_xi()
    piece = cxi * xr([bd.b01], 0, 0) * cxi * xr([CliffordElem.scalar(1)], 2, 2)
    ds = piece.dxi()
    pis1 = sigma_order("INV_D_A", -1, A0, 4).pi_plus()
    got = scalarize(pis1 * ds, 4)
    assert got.is_zero()


def test_checkpoint_pis1_times_dq21():
    """tr[pi+ sigma_{-1} x d_xin q_{-2}^1] = 12 h'(i xi^2 + xi - 2i)
    /((xi-i)^3 (xi+i)^3) + 48 h' i xi /((xi-i)^3 (xi+i)^4), tr[id] = 16."""
    bd = boundary_data(4)
    cxi = c_xi()
    cdxn = xr([CliffordElem.letter(C, DXN)], 0, 0)
    dxc = xr([CliffordElem.letter(C, XIP, HP * Fraction(1, 2))], 0, 0)
    nsq_full = xr([CliffordElem.scalar(1), CLIFF_ZERO, CliffordElem.scalar(1)], 0, 0)
    q21 = (cxi * xr([bd.b02], 0, 0) * cxi * xr([CliffordElem.scalar(1)], 2, 2)
           + cxi * cdxn * (dxc * nsq_full - cxi.scale(HP))
           * xr([CliffordElem.scalar(1)], 3, 3))
    pis1 = sigma_order("INV_D_A", -1, A0, 4).pi_plus()
    got = scalarize(pis1 * q21.dxi(), 4)
    t1 = XiRational([sc(0, -24, hp=True), sc(12, 0, hp=True), sc(0, 12, hp=True)],
                    3, 3, ScalarExpr.zero())
    t2 = XiRational([ScalarExpr.zero(), sc(0, 48, hp=True)], 3, 4, ScalarExpr.zero())
    want = t1 + t2
    assert (got - want).is_zero()


def test_n6_divergence_pinpoint():
    """Where the printed n=6 chain departs: its displayed d_xin sigma_{-3}
    equals the derivative of i c(xi)/(1 + xi_n^2)^4, not of the actual
    sigma_{-3} = i c(xi)/|xi|^4 = i c(xi)/(1 + xi_n^2)^2 it states itself."""
    actual = sigma_order("INV_TRIPLE", -3, A0, 6).dxi()
    wrong_power = (c_xi().scale(I_G) * xr([CliffordElem.scalar(1)], 4, 4)).dxi()
    # transcription of the printed formula: (-8 i xi c(xi') + i(1-7xi^2) c(dxn))/(1+xi^2)^5
    cxp = CliffordElem.letter(C, XIP)
    cdn = CliffordElem.letter(C, DXN)
    printed = XiRational(
        [cdn * ScalarExpr.const(g(0, 1)),
         cxp * ScalarExpr.const(g(0, -8)),
         cdn * ScalarExpr.const(g(0, -7))],
        5, 5, CLIFF_ZERO)
    assert (printed - wrong_power).is_zero()
    assert not (printed - actual).is_zero()
