#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

// Adaptive Gauss-Kronrod (7,15) integration, generic over the value type so the
// same driver serves scalar integrands and the 6x6 complex spectral densities.
// Subdivision is strictly deterministic: the worst panel (largest error
// estimate, ties broken by the left endpoint) is bisected until the total
// estimate meets the tolerance, and the final sum runs over panels sorted by
// position. No state is shared between calls, so calls may run concurrently.
namespace eomsim::quad {

// Non-negative abscissae of the 15-point Kronrod rule; nodes 1,3,5,7 carry the
// embedded 7-point Gauss rule. Values from the QUADPACK tables.
inline constexpr double kNodes[8] = {
    0.991455371120812639207, 0.949107912342758524526,
    0.864864423359769072789, 0.741531185599394439864,
    0.586087235467691130295, 0.405845151377397166907,
    0.207784955007898467601, 0.0,
};
inline constexpr double kKronrodW[8] = {
    0.022935322010529224964, 0.063092092629978553291,
    0.104790010322250183840, 0.140653259715525918745,
    0.169004726639267902827, 0.190350578064785409913,
    0.204432940075298892414, 0.209482141084727828013,
};
inline constexpr double kGaussW[4] = {
    0.129484966168869693271, 0.279705391489276667901,
    0.381830050505118944950, 0.417959183673469387755,
};

template <class Value>
struct Integral {
    Value value;
    double error = 0.0;   // accumulated Kronrod-Gauss discrepancy
    int panels = 0;
    bool converged = false;
};

namespace detail {

template <class Value>
struct Panel {
    double a, b;
    Value value;
    double error;
};

template <class F, class Norm, class Value = std::decay_t<std::invoke_result_t<F, double>>>
Panel<Value> gk15(F& f, double a, double b, Norm& norm) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const Value fc = f(mid);
    Value kron = kKronrodW[7] * fc;
    Value gauss = kGaussW[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const Value sum = f(mid + half * kNodes[i]) + f(mid - half * kNodes[i]);
        kron += kKronrodW[i] * sum;
        if (i % 2 == 1) gauss += kGaussW[i / 2] * sum;
    }
    kron *= half;
    gauss *= half;
    return {a, b, kron, norm(kron - gauss)};
}

}  // namespace detail

// Integrates f over [breakpoints.front(), breakpoints.back()], seeding one
// panel per consecutive breakpoint pair. `norm` maps a Value to a scalar
// magnitude (max-abs for matrices). Stops when the total error estimate drops
// below max(abs_tol, rel_tol * norm(value)) or max_panels is reached;
// `converged` records which. The relative term matters for integrands whose
// mass is large: the Kronrod-Gauss discrepancy of a resolved panel bottoms
// out at roundoff relative to the panel's own magnitude, so a pure absolute
// target below that floor can never be met no matter how far one subdivides.
template <class F, class Norm, class Value = std::decay_t<std::invoke_result_t<F, double>>>
Integral<Value> integrate(F f, std::vector<double> breakpoints, double abs_tol,
                          int max_panels, Norm norm, double rel_tol = 0.0) {
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                      breakpoints.end());

    std::vector<detail::Panel<Value>> panels;
    panels.reserve(breakpoints.size());
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i + 1] > breakpoints[i])
            panels.push_back(detail::gk15(f, breakpoints[i], breakpoints[i + 1], norm));
    }
    if (panels.empty())
        throw std::invalid_argument("quad::integrate needs at least two distinct breakpoints");

    Value running = panels.front().value;
    for (std::size_t i = 1; i < panels.size(); ++i) running += panels[i].value;

    auto total_error = [&panels] {
        double e = 0.0;
        for (const auto& p : panels) e += p.error;
        return e;
    };
    auto tolerance = [&] { return std::max(abs_tol, rel_tol * norm(running)); };

    while (total_error() > tolerance() && static_cast<int>(panels.size()) < max_panels) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i) {
            if (panels[i].error > panels[worst].error ||
                (panels[i].error == panels[worst].error && panels[i].a < panels[worst].a))
                worst = i;
        }
        const double a = panels[worst].a;
        const double b = panels[worst].b;
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;  // panel narrowed to machine resolution
        const Value replaced = panels[worst].value;
        panels[worst] = detail::gk15(f, a, mid, norm);
        panels.push_back(detail::gk15(f, mid, b, norm));
        running += panels[worst].value + panels.back().value - replaced;
    }

    std::sort(panels.begin(), panels.end(),
              [](const auto& x, const auto& y) { return x.a < y.a; });

    Integral<Value> out;
    out.value = panels.front().value;
    out.error = panels.front().error;
    for (std::size_t i = 1; i < panels.size(); ++i) {
        out.value += panels[i].value;
        out.error += panels[i].error;
    }
    out.panels = static_cast<int>(panels.size());
    out.converged = out.error <= std::max(abs_tol, rel_tol * norm(out.value));
    return out;
}

// Integrates f over [w, +inf) (or (-inf, -w] for Side = -1) through the
// substitution omega = side * w / u, u in (0, 1]. Requires w > 0 and an
// integrand decaying at least as 1/omega^2, which every spectral density
// assembled in this project satisfies.
template <int Side, class F, class Norm, class Value = std::decay_t<std::invoke_result_t<F, double>>>
Integral<Value> integrate_tail(F f, double w, double abs_tol, int max_panels, Norm norm,
                               double rel_tol = 0.0) {
    static_assert(Side == 1 || Side == -1);
    auto mapped = [&f, w](double u) -> Value {
        const double omega = Side * w / u;
        return (w / (u * u)) * f(omega);
    };
    return integrate(mapped, {0.0, 0.5, 1.0}, abs_tol, max_panels, norm, rel_tol);
}

}  // namespace eomsim::quad
