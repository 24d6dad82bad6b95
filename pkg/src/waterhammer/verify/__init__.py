from .metrics import OscillationMetrics, oscillation_metrics, pressure_rise, surge_metrics
from .moc import MocOracle, critical_time, moc_scalar_solution, smoothed_heaviside
from .order import OrderReport, observed_order
from .weak import Bump, Combination, WeakResidualReport, default_bumps, weak_residual
