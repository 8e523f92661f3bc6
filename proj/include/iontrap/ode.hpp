// Copyright 2026 The iontrap Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Explicit Runge-Kutta integrators on fixed-size states.
//
//  * rk8_step / integrate_rk8: fixed-step 8th-order Dormand-Prince formula
//    (the propagating solution of DOP853, without its error estimators).
//  * DormandPrince45: adaptive embedded 5(4) pair with local extrapolation.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "iontrap/errors.hpp"

namespace iontrap::ode {

template <std::size_t N>
using State = std::array<double, N>;

namespace detail {

template <std::size_t N, std::size_t S>
State<N> combine(const State<N>& y, double h, const std::array<double, S>& w,
                 const std::array<State<N>, S>& k, std::size_t stages) {
    State<N> out = y;
    for (std::size_t s = 0; s < stages; ++s) {
        if (w[s] == 0.0) continue;
        const double hw = h * w[s];
        for (std::size_t i = 0; i < N; ++i) out[i] += hw * k[s][i];
    }
    return out;
}

namespace dop853 {
// Nodes and coupling coefficients of Hairer & Wanner's DOP853, stages 1..12.
inline constexpr std::array<double, 12> c = {
    0.0,
    0.526001519587677318785587544488e-01,
    0.789002279381515978178381316732e-01,
    0.118350341907227396726757197510e+00,
    0.281649658092772603273242802490e+00,
    0.333333333333333333333333333333e+00,
    0.25e+00,
    0.307692307692307692307692307692e+00,
    0.651282051282051282051282051282e+00,
    0.6e+00,
    0.857142857142857142857142857142e+00,
    1.0,
};

inline constexpr std::array<std::array<double, 12>, 12> a = {{
    {},
    {5.26001519587677318785587544488e-2},
    {1.97250569845378994544595329183e-2, 5.91751709536136983633785987549e-2},
    {2.95875854768068491816892993775e-2, 0.0, 8.87627564304205475450678981324e-2},
    {2.41365134159266685502369798665e-1, 0.0, -8.84549479328286085344864962717e-1,
     9.24834003261792003115737966543e-1},
    {3.7037037037037037037037037037e-2, 0.0, 0.0, 1.70828608729473871279604482173e-1,
     1.25467687566822425016691814123e-1},
    {3.7109375e-2, 0.0, 0.0, 1.70252211019544039314978060272e-1,
     6.02165389804559606850219397283e-2, -1.7578125e-2},
    {3.70920001185047927108779319836e-2, 0.0, 0.0, 1.70383925712239993810214054705e-1,
     1.07262030446373284651809199168e-1, -1.53194377486244017527936158236e-2,
     8.27378916381402288758473766002e-3},
    {6.24110958716075717114429577812e-1, 0.0, 0.0, -3.36089262944694129406857109825e0,
     -8.68219346841726006818189891453e-1, 2.75920996994467083049415600797e1,
     2.01540675504778934086186788979e1, -4.34898841810699588477366255144e1},
    {4.77662536438264365890433908527e-1, 0.0, 0.0, -2.48811461997166764192642586468e0,
     -5.90290826836842996371446475743e-1, 2.12300514481811942347288949897e1,
     1.52792336328824235832596922938e1, -3.32882109689848629194453265587e1,
     -2.03312017085086261358222928593e-2},
    {-9.3714243008598732571704021658e-1, 0.0, 0.0, 5.18637242884406370830023853209e0,
     1.09143734899672957818500254654e0, -8.14978701074692612513997267357e0,
     -1.85200656599969598641566180701e1, 2.27394870993505042818970056734e1,
     2.49360555267965238987089396762e0, -3.0467644718982195003823669022e0},
    {2.27331014751653820792359768449e0, 0.0, 0.0, -1.05344954667372501984066689879e1,
     -2.00087205822486249909675718444e0, -1.79589318631187989172765950534e1,
     2.79488845294199600508499808837e1, -2.85899827713502369474065508674e0,
     -8.87285693353062954433549289258e0, 1.23605671757943030647266201528e1,
     6.43392746015763530355970484046e-1},
}};

inline constexpr std::array<double, 12> b = {
    5.42937341165687622380535766363e-2, 0.0, 0.0, 0.0, 0.0,
    4.45031289275240888144113950566e0,  1.89151789931450038304281599044e0,
    -5.8012039600105847814672114227e0,  3.1116436695781989440891606237e-1,
    -1.52160949662516078556178806805e-1, 2.01365400804030348374776537501e-1,
    4.47106157277725905176885569043e-2,
};
}  // namespace dop853

namespace dp45 {
inline constexpr std::array<double, 7> c = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};

inline constexpr std::array<std::array<double, 7>, 7> a = {{
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
}};

// 5th-order weights (equal to the last row of a: FSAL).
inline constexpr std::array<double, 7> b = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192,
                                            -2187.0 / 6784, 11.0 / 84, 0.0};

// Difference between the 5th- and 4th-order weights.
inline constexpr std::array<double, 7> e = {71.0 / 57600, 0.0, -71.0 / 16695, 71.0 / 1920,
                                            -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
}  // namespace dp45

}  // namespace detail

// Rhs: State<N>(double t, const State<N>& y).
template <std::size_t N, class Rhs>
State<N> rk8_step(const Rhs& f, double t, const State<N>& y, double h) {
    namespace tab = detail::dop853;
    std::array<State<N>, 12> k{};
    k[0] = f(t, y);
    for (std::size_t s = 1; s < 12; ++s) {
        const State<N> ys = detail::combine(y, h, tab::a[s], k, s);
        k[s] = f(t + tab::c[s] * h, ys);
    }
    return detail::combine(y, h, tab::b, k, 12);
}

// Takes `steps` equal steps of size h. observe(step, t, y) is called for the
// initial state (step 0) and after every step.
template <std::size_t N, class Rhs, class Observer>
State<N> integrate_rk8(const Rhs& f, double t0, State<N> y, double h, long steps, Observer&& observe) {
    observe(0L, t0, y);
    for (long n = 1; n <= steps; ++n) {
        // Time from the step index, not accumulated, so long runs stay on grid.
        y = rk8_step<N>(f, t0 + static_cast<double>(n - 1) * h, y, h);
        observe(n, t0 + static_cast<double>(n) * h, y);
    }
    return y;
}

template <std::size_t N, class Rhs>
class DormandPrince45 {
public:
    DormandPrince45(Rhs f, double t0, const State<N>& y0, const State<N>& abs_tol, double rel_tol,
                    double initial_step, long max_steps = 50'000'000)
        : f_(std::move(f)),
          t_(t0),
          y_(y0),
          abs_tol_(abs_tol),
          rel_tol_(rel_tol),
          h_(initial_step),
          max_steps_(max_steps) {
        k_first_ = f_(t_, y_);
    }

    double time() const { return t_; }
    const State<N>& state() const { return y_; }
    long accepted_steps() const { return accepted_; }
    long rejected_steps() const { return rejected_; }

    // Integrates up to exactly t_end; the last step is shortened to land on it.
    void advance_to(double t_end) {
        namespace tab = detail::dp45;
        while (t_ < t_end) {
            if (accepted_ + rejected_ >= max_steps_) {
                throw PhysicsError(PhysicsError::Kind::StepFailure,
                                   "adaptive integrator exceeded its step budget");
            }
            const double remaining = t_end - t_;
            const bool last = h_ >= remaining;
            const double h = last ? remaining : h_;
            if (h <= 1e-14 * std::max(std::abs(t_), std::abs(h_))) {
                throw PhysicsError(PhysicsError::Kind::StepFailure,
                                   "step size underflow at t = " + std::to_string(t_));
            }

            std::array<State<N>, 7> k{};
            k[0] = k_first_;
            for (std::size_t s = 1; s < 7; ++s) {
                k[s] = f_(t_ + tab::c[s] * h, detail::combine(y_, h, tab::a[s], k, s));
            }
            const State<N> y_new = detail::combine(y_, h, tab::b, k, 6);
            const State<N> err = detail::combine(State<N>{}, h, tab::e, k, 7);

            double sum = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double scale = abs_tol_[i] + rel_tol_ * std::max(std::abs(y_[i]), std::abs(y_new[i]));
                const double r = err[i] / scale;
                sum += r * r;
            }
            const double norm = std::sqrt(sum / static_cast<double>(N));
            if (!std::isfinite(norm)) {
                throw PhysicsError(PhysicsError::Kind::StepFailure, "non-finite state in integrator");
            }
            const double factor = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
            if (norm <= 1.0) {
                t_ = last ? t_end : t_ + h;
                y_ = y_new;
                k_first_ = k[6];
                ++accepted_;
                // A truncated final step says nothing about the natural step size.
                if (!last) h_ = h * factor;
            } else {
                ++rejected_;
                h_ = h * std::min(factor, 1.0);
            }
        }
    }

private:
    Rhs f_;
    double t_;
    State<N> y_;
    State<N> abs_tol_;
    double rel_tol_;
    double h_;
    long max_steps_;
    State<N> k_first_{};
    long accepted_ = 0;
    long rejected_ = 0;
};

}  // namespace iontrap::ode
