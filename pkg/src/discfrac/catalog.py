"""Builders for the worked example problems and their published data."""

from __future__ import annotations

from .timescale import Grid
from .variational import Fixed, Lagrangian, VariationalProblem

LAGRANGIANS = {
    "z1": "v^2",
    "z2": "gamma1*v^2 + gamma2*w^2",
    "z3": "(1/2)*v^2 - u",
    "hz1": "(1/2)*v^2 - u",
    "hz2": "(1/2)*v^2",
    "hz3": "v^3 + theta*w^2",
}


def z1(alpha: float, b: int = 4, A: float = 0.0, B: float = 1.0) -> VariationalProblem:
    """sum (left diff y)^2 on {0..b}, y(0)=A, y(b)=B."""
    return VariationalProblem(Grid(0.0, 1.0, b + 1), Lagrangian.from_expression(LAGRANGIANS["z1"]), alpha, alpha, Fixed(A), Fixed(B))


def z2(alpha: float, beta: float | None = None, gamma1: float = 1.0, gamma2: float = 1.0, b: int = 2, A: float = 0.0, B: float = 1.0) -> VariationalProblem:
    L = Lagrangian.from_expression(LAGRANGIANS["z2"], {"gamma1": gamma1, "gamma2": gamma2})
    return VariationalProblem(Grid(0.0, 1.0, b + 1), L, alpha, alpha if beta is None else beta, Fixed(A), Fixed(B))


def z3(alpha: float, b: int = 2) -> VariationalProblem:
    return VariationalProblem(Grid(0.0, 1.0, b + 1), Lagrangian.from_expression(LAGRANGIANS["z3"]), alpha, alpha, Fixed(0.0), Fixed(0.0))


def hz1(alpha: float, h: float) -> VariationalProblem:
    g = Grid.from_interval(0.0, 1.0, h)
    return VariationalProblem(g, Lagrangian.from_expression(LAGRANGIANS["hz1"]), alpha, alpha, Fixed(0.0), Fixed(0.0))


def hz2(h: float, alpha: float = 0.75) -> VariationalProblem:
    g = Grid.from_interval(0.0, 1.0, h)
    return VariationalProblem(g, Lagrangian.from_expression(LAGRANGIANS["hz2"]), alpha, alpha, Fixed(0.0), Fixed(1.0))


def hz3(alpha: float, beta: float, h: float, b: float, theta: float, functional_form: str = "definition") -> VariationalProblem:
    g = Grid.from_interval(0.0, b, h)
    L = Lagrangian.from_expression(LAGRANGIANS["hz3"], {"theta": theta})
    return VariationalProblem(g, L, alpha, beta, Fixed(0.0), Fixed(1.0), functional_form)


def hz3a(functional_form: str = "definition") -> VariationalProblem:
    return hz3(0.8, 0.5, 0.25, 1.0, 1.0, functional_form)


def hz3b(functional_form: str = "definition") -> VariationalProblem:
    return hz3(0.3, 0.3, 0.1, 0.5, 0.0, functional_form)


# Published tables. Rows are (parameter, values..., J) as printed.

TABLE_SQUARED = [
    (0.25, 0.10647146897355, 0.16857982587479, 0.2792657904952, 0.90855653524095),
    (0.50, 0.20997375328084, 0.35695538057743, 0.54068241469816, 0.67191601049869),
    (0.75, 0.25543605027861, 0.4702345471038, 0.69508876506414, 0.4246209666969),
    (1.00, 0.25, 0.5, 0.75, 0.25),
]

TABLE_TWO_SIDED = [
    (0.25, 0.22426470588235, 0.96441291360294),
    (0.50, 0.375, 0.9140625),
    (0.75, 0.4575, 0.91720703125),
    (1.00, 0.5, 1.0),
]
TABLE_TWO_SIDED_ARGMIN = 0.61747447161482

TABLE_LINEAR_TERM = [
    (0.25, 0.94117647058824, -0.47058823529412),
    (0.50, 0.8, -0.4),
    (0.75, 0.64, -0.32),
    (1.00, 0.5, -0.25),
]

# (y(0.25), y(0.5), y(0.75), J, verified)
TABLE_CUBIC_A = [
    (-0.5511786, 0.0515282, 0.5133134, 9.3035911, False),
    (0.2669091, 0.4878808, 0.7151924, 2.0084203, True),
    (-2.6745703, 0.5599360, -2.6730125, 698.4443232, False),
    (0.5789976, 1.0701515, 0.1840377, 12.5174960, False),
    (1.0306820, 1.8920322, 2.7429222, -32.7189756, True),
    (0.5087946, -0.1861431, 0.4489196, 10.6730959, False),
    (4.0583690, -1.0299054, -5.0030989, 2451.7637948, False),
    (-1.7436106, -3.1898449, -0.8850511, 238.6120299, False),
]

# (y(0.1), y(0.2), y(0.3), y(0.4), J); only row 6 satisfies the Legendre test
TABLE_CUBIC_B = [
    (-0.305570704, -0.428093486, 0.223708338, 0.480549114, 12.25396166),
    (-0.427934654, -0.599520948, 0.313290997, -0.661831134, 156.2317667),
    (0.284152257, -0.227595659, 0.318847274, 0.531827387, 8.669645848),
    (-0.277642565, 0.222381632, 0.386666793, 0.555841555, 6.993518478),
    (0.387074742, -0.310032839, 0.434336603, -0.482903047, 110.7912605),
    (0.259846344, 0.364035314, 0.463222456, 0.597907505, 5.104389191),
    (-0.375094681, 0.300437245, 0.522386246, -0.419053781, 93.95316858),
    (0.343327771, 0.480989769, 0.61204299, -0.280908953, 69.23497954),
    (0.297792192, 0.417196073, -0.218013689, 0.460556635, 14.12227593),
    (0.41283304, 0.578364133, -0.302235104, -0.649232892, 157.8272685),
    (-0.321401682, 0.257431098, -0.360644857, 0.400971272, 19.87468886),
    (0.330157414, -0.264444122, -0.459803086, 0.368850105, 24.84475504),
    (-0.459640837, 0.368155651, -0.515763025, -0.860276767, 224.9964788),
    (-0.359429958, -0.50354835, -0.640748011, 0.294083676, 34.43515839),
    (0.477760586, -0.382668914, -0.66536683, -0.956478654, 263.3075289),
    (-0.541587541, -0.758744525, -0.965476394, -1.246195157, 392.9592508),
]
TABLE_CUBIC_B_VERIFIED = 6
