#include "schlogl/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "schlogl/errors.hpp"

namespace schlogl {

namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

class Counter {
public:
    Counter(const Objective& f, std::size_t n, int budget, OptimizeResult& out)
        : f_(f), n_(n), budget_(budget), out_(out) {}

    bool exhausted() const { return out_.evaluations >= budget_; }

    double operator()(const Vec& x, Vec& g) {
        g.assign(n_, 0.0);
        const double v = f_(x, g);
        ++out_.evaluations;
        out_.trace.push_back(v);
        if (!std::isfinite(v)) throw SolverError("objective returned a non-finite value");
        if (v < best_f_) {
            best_f_ = v;
            best_x_ = x;
        }
        return v;
    }

    double best_f() const { return best_f_; }
    const Vec& best_x() const { return best_x_; }

private:
    const Objective& f_;
    std::size_t n_;
    int budget_;
    OptimizeResult& out_;
    double best_f_ = std::numeric_limits<double>::infinity();
    Vec best_x_;
};

struct Box {
    const Vec& lo;
    const Vec& hi;
    bool active() const { return !lo.empty(); }
    void project(Vec& x) const {
        if (!active()) return;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    }
    // Gradient with components pushing against an active bound zeroed.
    Vec projected_gradient(const Vec& x, const Vec& g) const {
        Vec pg = g;
        if (!active()) return pg;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if ((x[i] <= lo[i] && g[i] > 0) || (x[i] >= hi[i] && g[i] < 0)) pg[i] = 0.0;
        }
        return pg;
    }
};

Vec step_to(const Vec& x, const Vec& d, double a, const Box& box) {
    Vec y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + a * d[i];
    box.project(y);
    return y;
}

struct LineResult {
    bool ok = false;
    Vec x, g;
    double f = 0.0;
};

// Nocedal & Wright algorithms 3.5/3.6 with safeguarded cubic interpolation.
LineResult strong_wolfe(Counter& eval, const Vec& x, double f0, const Vec& g0, const Vec& d,
                        double a1, const Box& box) {
    constexpr double c1 = 1e-4;
    constexpr double c2 = 0.9;
    const double dg0 = dot(g0, d);
    LineResult r;
    Vec g;
    auto phi = [&](double a, Vec& xa, Vec& ga) {
        xa = step_to(x, d, a, box);
        return eval(xa, ga);
    };
    auto zoom = [&](double lo, double f_lo, double dg_lo, double hi, double f_hi, double dg_hi) {
        for (int k = 0; k < 30 && !eval.exhausted(); ++k) {
            // Cubic interpolation, bisection if the minimizer leaves the interval.
            double a = 0.5 * (lo + hi);
            const double d1 = dg_lo + dg_hi - 3 * (f_lo - f_hi) / (lo - hi);
            const double disc = d1 * d1 - dg_lo * dg_hi;
            if (disc >= 0) {
                const double d2 = std::copysign(std::sqrt(disc), hi - lo);
                const double cand = hi - (hi - lo) * (dg_hi + d2 - d1) / (dg_hi - dg_lo + 2 * d2);
                const double lo_b = std::min(lo, hi), hi_b = std::max(lo, hi);
                const double margin = 0.1 * (hi_b - lo_b);
                if (std::isfinite(cand) && cand > lo_b + margin && cand < hi_b - margin) a = cand;
            }
            Vec xa, ga;
            const double fa = phi(a, xa, ga);
            const double dga = dot(ga, d);
            if (fa > f0 + c1 * a * dg0 || fa >= f_lo) {
                hi = a;
                f_hi = fa;
                dg_hi = dga;
            } else {
                if (std::abs(dga) <= -c2 * dg0) return LineResult{true, xa, ga, fa};
                if (dga * (hi - lo) >= 0) {
                    hi = lo;
                    f_hi = f_lo;
                    dg_hi = dg_lo;
                }
                lo = a;
                f_lo = fa;
                dg_lo = dga;
                r = LineResult{true, xa, ga, fa};  // sufficient decrease at least
            }
        }
        return r;
    };
    double a_prev = 0.0, f_prev = f0, dg_prev = dg0;
    double a = a1;
    for (int i = 0; i < 20 && !eval.exhausted(); ++i) {
        Vec xa, ga;
        const double fa = phi(a, xa, ga);
        const double dga = dot(ga, d);
        if (fa > f0 + c1 * a * dg0 || (i > 0 && fa >= f_prev)) {
            return zoom(a_prev, f_prev, dg_prev, a, fa, dga);
        }
        if (std::abs(dga) <= -c2 * dg0) return LineResult{true, xa, ga, fa};
        if (dga >= 0) return zoom(a, fa, dga, a_prev, f_prev, dg_prev);
        r = LineResult{true, xa, ga, fa};
        a_prev = a;
        f_prev = fa;
        dg_prev = dga;
        a *= 2.0;
    }
    return r;
}

LineResult backtrack(Counter& eval, const Vec& x, double f0, const Vec& g0, const Vec& d, double a,
                     const Box& box) {
    for (int i = 0; i < 40 && !eval.exhausted(); ++i) {
        Vec xa = step_to(x, d, a, box);
        Vec step(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) step[k] = xa[k] - x[k];
        Vec ga;
        const double fa = eval(xa, ga);
        if (fa <= f0 + 1e-4 * dot(g0, step)) return {true, xa, ga, fa};
        a *= 0.5;
    }
    return {};
}

}  // namespace

OptimizeResult minimize_lbfgsb(const Objective& f, std::vector<double> x0, const OptimizeOptions& opt) {
    OptimizeResult out;
    const std::size_t n = x0.size();
    const Box box{opt.lower, opt.upper};
    if (box.active() && (opt.lower.size() != n || opt.upper.size() != n)) {
        throw DomainError("bounds must match the parameter count");
    }
    Counter eval(f, n, opt.max_iters, out);
    Vec x = std::move(x0);
    box.project(x);
    Vec g;
    double fx = eval(x, g);
    std::deque<std::pair<Vec, Vec>> mem;  // (s, y)
    out.status = "max_iters reached";
    while (!eval.exhausted()) {
        if (norm(box.projected_gradient(x, g)) < opt.gtol) {
            out.converged = true;
            out.status = "gradient norm below tolerance";
            break;
        }
        // Two-loop recursion on the projected gradient.
        Vec q = box.projected_gradient(x, g);
        std::vector<double> alpha(mem.size());
        for (std::size_t k = mem.size(); k-- > 0;) {
            const auto& [s, y] = mem[k];
            alpha[k] = dot(s, q) / dot(y, s);
            for (std::size_t i = 0; i < n; ++i) q[i] -= alpha[k] * y[i];
        }
        if (!mem.empty()) {
            const auto& [s, y] = mem.back();
            const double gamma = dot(s, y) / dot(y, y);
            for (double& v : q) v *= gamma;
        }
        for (std::size_t k = 0; k < mem.size(); ++k) {
            const auto& [s, y] = mem[k];
            const double beta = dot(y, q) / dot(y, s);
            for (std::size_t i = 0; i < n; ++i) q[i] += s[i] * (alpha[k] - beta);
        }
        Vec d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = -q[i];
        if (dot(d, g) >= 0) {
            // Not a descent direction: restart from steepest descent.
            mem.clear();
            for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
        }
        const double a0 = mem.empty() ? std::min(1.0, 1.0 / std::max(norm(g), 1e-12)) : 1.0;
        LineResult ls = box.active() ? backtrack(eval, x, fx, g, d, a0, box)
                                     : strong_wolfe(eval, x, fx, g, d, a0, box);
        if (!ls.ok) {
            if (!mem.empty()) {
                mem.clear();
                continue;
            }
            out.status = eval.exhausted() ? "max_iters reached" : "line search failed";
            break;
        }
        Vec s(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = ls.x[i] - x[i];
            y[i] = ls.g[i] - g[i];
        }
        const double df = std::abs(fx - ls.f);
        x = std::move(ls.x);
        g = std::move(ls.g);
        fx = ls.f;
        if (dot(s, y) > 1e-12 * norm(s) * norm(y)) {
            mem.emplace_back(std::move(s), std::move(y));
            if (static_cast<int>(mem.size()) > opt.history) mem.pop_front();
        }
        if (df < opt.ftol) {
            out.converged = true;
            out.status = "cost change below tolerance";
            break;
        }
    }
    out.x = eval.best_x();
    out.f = eval.best_f();
    return out;
}

OptimizeResult minimize_adam(const Objective& f, std::vector<double> x0, const OptimizeOptions& opt) {
    OptimizeResult out;
    const std::size_t n = x0.size();
    const Box box{opt.lower, opt.upper};
    Counter eval(f, n, opt.max_iters, out);
    Vec x = std::move(x0);
    box.project(x);
    Vec m(n, 0.0), v(n, 0.0), g;
    double prev = std::numeric_limits<double>::infinity();
    out.status = "max_iters reached";
    for (int t = 1; !eval.exhausted(); ++t) {
        const double fx = eval(x, g);
        if (opt.adam_stop_on_tolerance && (std::abs(prev - fx) < opt.ftol || norm(g) < opt.gtol)) {
            out.converged = true;
            out.status = "tolerance reached";
            break;
        }
        prev = fx;
        const double bc1 = 1.0 - std::pow(opt.beta1, t);
        const double bc2 = 1.0 - std::pow(opt.beta2, t);
        for (std::size_t i = 0; i < n; ++i) {
            m[i] = opt.beta1 * m[i] + (1 - opt.beta1) * g[i];
            v[i] = opt.beta2 * v[i] + (1 - opt.beta2) * g[i] * g[i];
            x[i] -= opt.learning_rate * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + opt.epsilon);
        }
        box.project(x);
    }
    out.x = eval.best_x();
    out.f = eval.best_f();
    return out;
}

}  // namespace schlogl
