#include "schro/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace schro {

namespace {

// QUADPACK 15-point Kronrod extension of the 7-point Gauss rule on [-1,1].
// Positive abscissae only; xgk[1], xgk[3], ... are the Gauss-7 nodes.
constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
    double a, b;
    cplx k15;
    double err;
};

Panel eval_panel(const std::function<cplx(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    cplx fv[15];
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(c - h * xgk[j]);
        fv[14 - j] = f(c + h * xgk[j]);
    }
    fv[7] = f(c);
    cplx k15{0.0, 0.0}, g7{0.0, 0.0};
    for (int j = 0; j < 7; ++j) k15 += wgk[j] * (fv[j] + fv[14 - j]);
    k15 += wgk[7] * fv[7];
    for (int j = 0; j < 3; ++j) g7 += wg[j] * (fv[2 * j + 1] + fv[13 - 2 * j]);
    g7 += wg[3] * fv[7];
    k15 *= h;
    g7 *= h;
    return {a, b, k15, std::abs(k15 - g7)};
}

}  // namespace

QuadResult integrate_gk(const std::function<cplx(double)>& f, double a, double b,
                        double abs_tol, int max_intervals) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    auto cmp = [](const Panel& p, const Panel& q) { return p.err < q.err; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);
    heap.push(eval_panel(f, a, b));
    cplx total = heap.top().k15;
    double total_err = heap.top().err;
    int n = 1;
    while (total_err > abs_tol && n < max_intervals) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // interval at roundoff floor
            heap.push({worst.a, worst.b, worst.k15, 0.0});
            continue;
        }
        Panel left = eval_panel(f, worst.a, mid);
        Panel right = eval_panel(f, mid, worst.b);
        total += left.k15 + right.k15 - worst.k15;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++n;
    }
    out.value = total;
    out.abs_err = total_err;
    out.n_intervals = n;
    out.converged = total_err <= abs_tol;
    return out;
}

double integrate_gk_real(const std::function<double(double)>& f, double a, double b,
                         double abs_tol, int max_intervals) {
    auto g = [&f](double x) { return cplx(f(x), 0.0); };
    return integrate_gk(g, a, b, abs_tol, max_intervals).value.real();
}

namespace {

cplx simpson_rec(const std::function<cplx(double)>& f, double a, double b, cplx fa,
                 cplx fm, cplx fb, cplx whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const cplx flm = f(lm), frm = f(rm);
    const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const cplx delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

cplx integrate_simpson(const std::function<cplx(double)>& f, double a, double b,
                       double abs_tol, int max_depth) {
    if (a == b) return {0.0, 0.0};
    const double m = 0.5 * (a + b);
    const cplx fa = f(a), fm = f(m), fb = f(b);
    const cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

double integrate_simpson_real(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int max_depth) {
    auto g = [&f](double x) { return cplx(f(x), 0.0); };
    return integrate_simpson(g, a, b, abs_tol, max_depth).real();
}

GaussLegendre::GaussLegendre(int n) : x(n), w(n) {
    // nodes = roots of P_n by Newton from Chebyshev initial guesses
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p0, p1, dp;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = xi;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
            const double dx = p1 / dp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        x[i] = -xi;
        x[n - 1 - i] = xi;
        const double wi = 2.0 / ((1.0 - xi * xi) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
}

void GaussLegendre::map_to(double a, double b, std::vector<double>& xs,
                           std::vector<double>& ws) const {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const int n = static_cast<int>(x.size());
    xs.resize(n);
    ws.resize(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = c + h * x[i];
        ws[i] = h * w[i];
    }
}

}  // namespace schro
