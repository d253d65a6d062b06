#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace cellmarket::quad {

struct Result {
    double value;
    double abs_error;  // accumulated error estimate
    int panels;        // panels evaluated
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule. Positive abscissae;
// Gauss nodes are at the odd indices.
inline constexpr double kNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kWeightsK[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kWeightsG[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class F>
void gauss_kronrod_15(const F& f, double a, double b, double& value, double& error) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double k15 = kWeightsK[7] * fc;
    double g7 = kWeightsG[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const double fsum = f(center - dx) + f(center + dx);
        k15 += kWeightsK[i] * fsum;
        if (i % 2 == 1) g7 += kWeightsG[i / 2] * fsum;
    }
    value = k15 * half;
    error = std::abs((k15 - g7) * half);
}

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace detail

/// Adaptive Gauss-Kronrod integration over consecutive panels given by
/// `breakpoints`, to an absolute error target. Refines the worst panel
/// first, so integrable endpoint singularities converge without special
/// casing. Callers integrating a sharply decaying tail over a long interval
/// should pass geometric breakpoints so no initial panel misses the mass.
/// The returned abs_error is the conservative |G7 - K15| sum of the
/// surviving panels.
template <class F>
Result integrate_panels(const F& f, const std::vector<double>& breakpoints, double abs_tol,
                        int max_panels = 200000) {
    std::priority_queue<detail::Panel> active;
    double total_value = 0.0;
    double total_error = 0.0;
    double frozen_error = 0.0;  // panels too narrow to split further
    int panels = 0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        detail::Panel p{};
        p.a = breakpoints[i];
        p.b = breakpoints[i + 1];
        detail::gauss_kronrod_15(f, p.a, p.b, p.value, p.error);
        active.push(p);
        total_value += p.value;
        total_error += p.error;
        ++panels;
    }

    while (total_error > abs_tol && !active.empty() && panels < max_panels) {
        const detail::Panel worst = active.top();
        active.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            frozen_error += worst.error;
            if (frozen_error > abs_tol) break;
            continue;
        }
        detail::Panel left{}, right{};
        left.a = worst.a;
        left.b = mid;
        right.a = mid;
        right.b = worst.b;
        detail::gauss_kronrod_15(f, left.a, left.b, left.value, left.error);
        detail::gauss_kronrod_15(f, right.a, right.b, right.value, right.error);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        active.push(left);
        active.push(right);
        ++panels;
    }
    return {total_value, std::max(total_error, 0.0), panels};
}

/// Single-interval convenience overload.
template <class F>
Result integrate(const F& f, double a, double b, double abs_tol, int max_panels = 200000) {
    return integrate_panels(f, std::vector<double>{a, b}, abs_tol, max_panels);
}

}  // namespace cellmarket::quad
