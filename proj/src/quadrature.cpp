#include "molens/quadrature.hpp"

namespace molens {

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double recurse(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth, bool& failed) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(fa, flm, fm, m - a);
    double right = simpson(fm, frm, fb, b - m);
    double err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
    if (depth <= 0) {
        failed = true;
        return left + right + err / 15.0;
    }
    return recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, failed) +
           recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, failed);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol,
                        int max_depth) {
    if (!(b > a)) throw ValidationError("adaptive_simpson: requires b > a");
    if (!(abs_tol > 0.0)) throw ValidationError("adaptive_simpson: tolerance must be positive");
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = simpson(fa, fm, fb, b - a);
    bool failed = false;
    double result = recurse(f, a, b, fa, fm, fb, whole, abs_tol, max_depth, failed);
    if (failed)
        throw ConvergenceError("adaptive_simpson: depth limit reached before tolerance " +
                               std::to_string(abs_tol));
    return result;
}

}  // namespace molens
