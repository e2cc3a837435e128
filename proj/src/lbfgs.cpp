#include "pdisp/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace pdisp {

namespace {

constexpr int kMaxLineSearchEvals = 50;

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct Pair {
    std::vector<double> s, y;
    double rho;
};

// Minimizer of the cubic through (a, fa, ga) and (b, fb, gb); falls back to
// the midpoint when the interpolation is degenerate or leaves the bracket.
double cubic_min(double a, double fa, double ga, double b, double fb, double gb) {
    const double d1 = ga + gb - 3.0 * (fa - fb) / (a - b);
    const double disc = d1 * d1 - ga * gb;
    if (disc < 0.0) return 0.5 * (a + b);
    const double d2 = std::copysign(std::sqrt(disc), b - a);
    const double t = b - (b - a) * ((gb + d2 - d1) / (gb - ga + 2.0 * d2));
    const double lo = std::min(a, b), hi = std::max(a, b);
    const double margin = 0.1 * (hi - lo);
    if (!std::isfinite(t) || t < lo + margin || t > hi - margin)
        return 0.5 * (a + b);
    return t;
}

struct LinePoint {
    double step, value, slope;
};

// One-dimensional restriction of the objective along direction d.
class LineFn {
public:
    LineFn(const Objective& f, std::span<const double> x, std::span<const double> d,
           std::vector<double>& xtrial, std::vector<double>& gtrial)
        : f_(f), x_(x), d_(d), xt_(xtrial), gt_(gtrial) {}

    LinePoint eval(double step) {
        for (std::size_t i = 0; i < x_.size(); ++i) xt_[i] = x_[i] + step * d_[i];
        const double v = f_(xt_, gt_);
        ++evals_;
        return {step, v, dot(gt_, d_)};
    }
    int evals() const { return evals_; }

private:
    const Objective& f_;
    std::span<const double> x_;
    std::span<const double> d_;
    std::vector<double>& xt_;
    std::vector<double>& gt_;
    int evals_ = 0;
};

}  // namespace

MinimizeResult minimize(const Objective& objective, std::vector<double> x0,
                        const LocalOptConfig& cfg) {
    const std::size_t n = x0.size();
    MinimizeResult res;
    res.x = std::move(x0);

    std::vector<double> grad(n), xtrial(n), gtrial(n), dir(n);
    res.value = objective(res.x, grad);
    res.grad_norm = inf_norm(grad);
    if (res.grad_norm <= cfg.grad_tol) {
        res.status = OptStatus::Converged;
        return res;
    }

    std::deque<Pair> history;

    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        res.iters = iter;

        // Two-loop recursion for d = -H * grad.
        for (std::size_t i = 0; i < n; ++i) dir[i] = -grad[i];
        std::vector<double> alpha(history.size());
        for (std::size_t h = history.size(); h-- > 0;) {
            const Pair& pr = history[h];
            alpha[h] = pr.rho * dot(pr.s, dir);
            for (std::size_t i = 0; i < n; ++i) dir[i] -= alpha[h] * pr.y[i];
        }
        if (!history.empty()) {
            const Pair& last = history.back();
            const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
            for (std::size_t i = 0; i < n; ++i) dir[i] *= gamma;
        }
        for (std::size_t h = 0; h < history.size(); ++h) {
            const Pair& pr = history[h];
            const double beta = pr.rho * dot(pr.y, dir);
            for (std::size_t i = 0; i < n; ++i) dir[i] += (alpha[h] - beta) * pr.s[i];
        }

        double slope0 = dot(grad, dir);
        if (!(slope0 < 0.0)) {
            // Not a descent direction; drop the curvature memory.
            history.clear();
            for (std::size_t i = 0; i < n; ++i) dir[i] = -grad[i];
            slope0 = dot(grad, dir);
            if (!(slope0 < 0.0)) {
                res.status = OptStatus::Converged;  // gradient numerically zero
                return res;
            }
        }

        // Strong Wolfe search: bracket then zoom.
        LineFn line(objective, res.x, dir, xtrial, gtrial);
        const double c1 = cfg.wolfe_c1, c2 = cfg.wolfe_c2;
        const double armijo_floor = res.value + 1e-12 * std::abs(res.value);
        auto acceptable = [&](const LinePoint& pt) {
            if (pt.value <= res.value + c1 * pt.step * slope0 &&
                std::abs(pt.slope) <= -c2 * slope0)
                return true;
            // Hager-Zhang approximate Wolfe: one-sided curvature plus a
            // value floor, for steps where the Armijo test drowns in
            // rounding error or the valley is too stiff to satisfy the
            // two-sided slope bound within budget.
            return pt.value <= armijo_floor && pt.slope >= c2 * slope0 &&
                   pt.slope <= (2.0 * c1 - 1.0) * slope0;
        };

        LinePoint accepted{0.0, res.value, slope0};
        bool have_step = false;

        LinePoint prev{0.0, res.value, slope0};
        // With curvature history the unit step is the quasi-Newton choice;
        // on a fresh start scale it down to a unit-length move so a huge
        // gradient cannot fling the first trial out of the basin.
        double step = 1.0;
        if (history.empty()) {
            const double gnorm = std::sqrt(dot(grad, grad));
            if (gnorm > 1.0) step = 1.0 / gnorm;
        }
        bool bracketed = false;
        LinePoint lo{}, hi{};
        while (line.evals() < kMaxLineSearchEvals) {
            LinePoint cur = line.eval(step);
            if (acceptable(cur)) {
                accepted = cur;
                have_step = true;
                break;
            }
            if (cur.value > res.value + c1 * cur.step * slope0 ||
                (line.evals() > 1 && cur.value >= prev.value)) {
                lo = prev;
                hi = cur;
                bracketed = true;
                break;
            }
            if (cur.slope >= 0.0) {
                lo = cur;
                hi = prev;
                bracketed = true;
                break;
            }
            prev = cur;
            step *= 2.0;
            if (step > 1e20) break;
        }

        if (!have_step && bracketed) {
            while (line.evals() < kMaxLineSearchEvals) {
                const double trial =
                    cubic_min(lo.step, lo.value, lo.slope, hi.step, hi.value, hi.slope);
                LinePoint cur = line.eval(trial);
                if (acceptable(cur)) {
                    accepted = cur;
                    have_step = true;
                    break;
                }
                if (cur.value > res.value + c1 * cur.step * slope0 ||
                    cur.value >= lo.value) {
                    hi = cur;
                } else {
                    if (cur.slope * (hi.step - lo.step) >= 0.0) hi = lo;
                    lo = cur;
                }
                if (std::abs(hi.step - lo.step) <
                    1e-16 * std::max(1.0, std::abs(lo.step)))
                    break;
            }
        }

        if (!have_step) {
            if (!history.empty()) {
                // Retry from steepest descent before giving up.
                history.clear();
                continue;
            }
            res.status = OptStatus::LineSearchFail;
            return res;
        }

        // Commit the step. xtrial/gtrial hold the accepted point.
        Pair pr;
        pr.s.resize(n);
        pr.y.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            pr.s[i] = accepted.step * dir[i];
            pr.y[i] = gtrial[i] - grad[i];
        }
        res.x = xtrial;
        grad = gtrial;
        res.value = accepted.value;
        res.grad_norm = inf_norm(grad);

        const double sy = dot(pr.s, pr.y);
        if (sy > 1e-10 * std::sqrt(dot(pr.s, pr.s)) * std::sqrt(dot(pr.y, pr.y))) {
            pr.rho = 1.0 / sy;
            history.push_back(std::move(pr));
            if (history.size() > static_cast<std::size_t>(cfg.memory))
                history.pop_front();
        }

        if (res.grad_norm <= cfg.grad_tol) {
            res.status = OptStatus::Converged;
            return res;
        }
    }

    res.status = OptStatus::MaxIters;
    return res;
}

}  // namespace pdisp
