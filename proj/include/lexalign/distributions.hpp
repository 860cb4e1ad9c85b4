#pragma once

namespace lexalign::stats {

/// Regularized incomplete beta function I_x(a, b) for a, b > 0, x in [0, 1].
double incomplete_beta(double a, double b, double x);

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double t_two_tailed(double t, double df);

/// P(F' >= f) for the F distribution with (df1, df2) degrees of freedom.
double f_upper_tail(double f, double df1, double df2);

/// P(|Z| >= |z|) for a standard normal Z.
double normal_two_tailed(double z);

}  // namespace lexalign::stats
