#pragma once

namespace pipelife::special {

/// Regularized incomplete beta I_x(a, b), evaluated with Lentz's continued
/// fraction (symmetry swap when x > (a+1)/(a+b+2)). a, b > 0, x in [0, 1].
[[nodiscard]] double incomplete_beta(double a, double b, double x);

/// P(F > f) for the F distribution with (d1, d2) degrees of freedom.
[[nodiscard]] double f_upper_tail(double f, double d1, double d2);

/// Two-sided P(|T| > |t|) for Student's t with `df` degrees of freedom.
[[nodiscard]] double t_two_sided(double t, double df);

}  // namespace pipelife::special
