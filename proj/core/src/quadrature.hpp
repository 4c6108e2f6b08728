#pragma once

#include <cmath>

namespace ninls::detail {

// Adaptive Simpson with Richardson correction. Accumulates the error
// estimate across calls and remembers whether any panel hit the depth limit.
struct AdaptiveSimpson {
  int max_depth = 48;
  double error = 0.0;
  bool converged = true;

  template <class F>
  double run(const F& f, double a, double b, double tol) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return step(f, a, b, fa, fm, fb, whole, tol, 0);
  }

 private:
  template <class F>
  double step(const F& f, double a, double b, double fa, double fm, double fb, double whole,
              double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    // Depth >= 2 guards against a lucky agreement on the first coarse panels.
    if ((depth >= 2 && std::abs(diff) <= 15.0 * tol) || depth >= max_depth) {
      if (std::abs(diff) > 15.0 * tol) converged = false;
      error += std::abs(diff) / 15.0;
      return left + right + diff / 15.0;
    }
    return step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace ninls::detail
