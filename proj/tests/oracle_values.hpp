#pragma once

// Reference constants for the built-in models, frozen from high-precision
// quadrature evaluated independently of the library (30-digit arithmetic,
// adaptive rules). Closed forms where they exist:
//
//   sin5/uniform:  E[phi^2] = 1/2 - sin(10)/20
//                  E[phi^4] = 3/8 - sin(10)/20 + sin(20)/160
//                  E[v]     = 4/3,  E[v^2] = 16/5
//   sin5/exp(1):   E[phi^2] = 50/101
//                  E[phi^4] = 3/8 - 1/202 + 1/3208
//                  E[phi^2 v] = 2 (2 + 598/1030301)
//   quad/exp(1):   E[phi^2] = 6, E[phi^2 v] = 864, E[v^2] = 384,
//                  var[phi^2] = 7668
//   quad/uniform:  E[phi^2] = 17/10, E[phi^4] = 2851/630,
//                  E[phi^2 v] = 132/35

namespace oracle {

// phi = sin(5x), v = 4x^2, X ~ U(0,1)
namespace sin5_uniform {
constexpr double eta = 0.52720105554446849;
constexpr double e_phi = 0.14326756290735475;
constexpr double var_y = 1.840008794296389;
constexpr double sobol = 0.27536578223627787;
constexpr double e_phi2_v = 0.80685766556404125;
constexpr double e_v2 = 3.2;
constexpr double var_phi2 = 0.12996601039431441;
constexpr double sigma2_opt = 3.3573966726504794;
constexpr double sigma2_rank = 6.5573966726504794;
constexpr double sigma2_nn = 10.694220348608835;
constexpr double sigma2_ker = 3.7472947038334226;
constexpr double improvement = 0.48799853962572161;
}  // namespace sin5_uniform

// phi = sin(5x), v = 4x^2, X ~ Exp(1)
namespace sin5_exp {
constexpr double eta = 0.49504950495049505;
constexpr double var_y = 8.458067256429785;
constexpr double sobol = 0.054157438400784092;
constexpr double e_phi2_v = 4.0011608258169215;
constexpr double e_v2 = 384.0;
constexpr double var_phi2 = 0.12528721329701919;
constexpr double sigma2_opt = 16.129930516564705;
constexpr double sigma2_rank = 400.12993051656471;
constexpr double sigma2_nn = 788.25637855567865;
constexpr double sigma2_ker = 16.505792156455763;
constexpr double improvement = 0.95968826801898801;
}  // namespace sin5_exp

// phi = x^2 - 3x, v = 4x^2, X ~ Exp(1)
namespace quad_exp {
constexpr double eta = 6.0;
constexpr double var_y = 13.0;
constexpr double sobol = 0.38461538461538462;
constexpr double e_phi2_v = 864.0;
constexpr double e_v2 = 384.0;
constexpr double var_phi2 = 7668.0;
constexpr double sigma2_opt = 11124.0;
constexpr double sigma2_rank = 11508.0;
constexpr double sigma2_nn = 20424.0;
constexpr double sigma2_ker = 34128.0;
constexpr double improvement = 0.033368091762252346;
}  // namespace quad_exp

// phi = x^2 - 3x, v = 4x^2, X ~ U(0,1)
namespace quad_uniform {
constexpr double eta = 1.7;
constexpr double e_phi2 = 1.7;
constexpr double e_phi4 = 4.5253968253968254;
constexpr double e_phi2_v = 3.7714285714285714;
constexpr double e_v = 4.0 / 3.0;
constexpr double e_v2 = 3.2;
constexpr double var_phi2 = 1.6353968253968254;
constexpr double sigma2_opt = 16.721111111111111;
constexpr double sigma2_rank = 19.921111111111111;
}  // namespace quad_uniform

}  // namespace oracle
