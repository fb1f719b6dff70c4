#include "todatopo/toda.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "todatopo/atlas.hpp"

namespace todatopo {

void toda_rhs(const RootSystem& rs, const std::vector<double>& a, const std::vector<double>& b,
              std::vector<double>& da, std::vector<double>& db) {
    const int l = rs.rank();
    da.resize(l);
    db.resize(l);
    for (int i = 0; i < l; ++i) {
        da[i] = b[i];
        double s = 0.0;
        for (int j = 0; j < l; ++j) s += rs.cartan(i, j) * a[j];
        db[i] = -b[i] * s;
    }
}

std::vector<std::vector<double>> lax_matrix(const RootSystem& rs, const std::vector<double>& a,
                                            const std::vector<double>& b) {
    if (rs.type_label() != 'A')
        throw UnsupportedType("Lax matrix is implemented for type A only");
    const int l = rs.rank();
    const int n = l + 1;
    std::vector<std::vector<double>> X(n, std::vector<double>(n, 0.0));
    for (int k = 0; k < n; ++k) {
        double prev = (k > 0) ? a[k - 1] : 0.0;
        double curr = (k < l) ? a[k] : 0.0;
        X[k][k] = curr - prev;
    }
    for (int i = 0; i < l; ++i) {
        X[i][i + 1] = 1.0;
        X[i + 1][i] = b[i];
    }
    return X;
}

std::vector<std::vector<double>> lax_p_matrix(const RootSystem& rs, const std::vector<double>& b) {
    if (rs.type_label() != 'A')
        throw UnsupportedType("Lax matrix is implemented for type A only");
    const int l = rs.rank();
    std::vector<std::vector<double>> P(l + 1, std::vector<double>(l + 1, 0.0));
    for (int i = 0; i < l; ++i) P[i + 1][i] = -b[i];
    return P;
}

std::vector<double> lax_invariants(const std::vector<std::vector<double>>& X) {
    // det(lambda I - X) for a tridiagonal matrix by the three-term
    // recurrence, carried on coefficient arrays (low degree first).
    const int n = static_cast<int>(X.size());
    std::vector<std::vector<double>> q(n + 1);
    q[0] = {1.0};
    for (int k = 1; k <= n; ++k) {
        double d = X[k - 1][k - 1];
        q[k].assign(k + 1, 0.0);
        for (int p = 0; p < k; ++p) {
            q[k][p + 1] += q[k - 1][p];   // lambda * q_{k-1}
            q[k][p] -= d * q[k - 1][p];   // -d_k * q_{k-1}
        }
        if (k >= 2) {
            double off = X[k - 1][k - 2] * X[k - 2][k - 1];
            for (int p = 0; p < k - 1; ++p) q[k][p] -= off * q[k - 2][p];
        }
    }
    std::vector<double> out;
    for (int p = n - 2; p >= 0; --p) out.push_back(q[n][p]);
    return out;
}

std::vector<double> b_from_f(const RootSystem& rs, const std::vector<double>& f,
                             const std::vector<int>& eps) {
    const int l = rs.rank();
    std::vector<double> b(l);
    for (int i = 0; i < l; ++i) {
        double s = 0.0;
        for (int j = 0; j < l; ++j) s += rs.cartan(i, j) * f[j];
        b[i] = eps[i] * std::exp(-s);
    }
    return b;
}

std::vector<double> positions_from_f(const std::vector<double>& f) {
    std::vector<double> q(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        q[i] = f[i] - (i + 1 < f.size() ? f[i + 1] : 0.0);
    return q;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 35.0 / 384 - 5179.0 / 57600, E3 = 500.0 / 1113 - 7571.0 / 16695,
                 E4 = 125.0 / 192 - 393.0 / 640, E5 = -2187.0 / 6784 + 92097.0 / 339200,
                 E6 = 11.0 / 84 - 187.0 / 2100, E7 = -1.0 / 40;

struct Rhs {
    const RootSystem& rs;
    int l;
    void operator()(const std::vector<double>& y, std::vector<double>& f) const {
        for (int i = 0; i < l; ++i) {
            f[i] = y[l + i];
            double s = 0.0;
            for (int j = 0; j < l; ++j) s += rs.cartan(i, j) * y[j];
            f[l + i] = -y[l + i] * s;
        }
    }
};

}  // namespace

TrajectorySample Trajectory::at(double t) const {
    if (samples.empty()) throw Error("empty trajectory");
    const bool fwd = samples.size() < 2 || samples.back().t >= samples.front().t;
    auto before = [&](double x, double y) { return fwd ? x < y : x > y; };
    std::size_t lo = 0, hi = samples.size() - 1;
    if (!before(samples.front().t, t) && samples.front().t != t) lo = hi = 0;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (before(t, samples[mid].t))
            hi = mid;
        else
            lo = mid;
    }
    const auto& s0 = samples[lo];
    const auto& s1 = samples[std::min(lo + 1, samples.size() - 1)];
    double h = s1.t - s0.t;
    const int l = static_cast<int>(s0.a.size());
    TrajectorySample out;
    out.t = t;
    out.a.resize(l);
    out.b.resize(l);
    if (h == 0.0) {
        out.a = s0.a;
        out.b = s0.b;
        return out;
    }
    double u = (t - s0.t) / h;
    double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    double h10 = u * (1 - u) * (1 - u);
    double h01 = u * u * (3 - 2 * u);
    double h11 = u * u * (u - 1);
    const auto& f0 = slopes[lo];
    const auto& f1 = slopes[std::min(lo + 1, slopes.size() - 1)];
    for (int i = 0; i < l; ++i) {
        out.a[i] = h00 * s0.a[i] + h * h10 * f0[i] + h01 * s1.a[i] + h * h11 * f1[i];
        out.b[i] = h00 * s0.b[i] + h * h10 * f0[l + i] + h01 * s1.b[i] + h * h11 * f1[l + i];
    }
    return out;
}

Trajectory integrate(const RootSystem& rs, const TodaState& s0, double t_end,
                     const IntegrateOptions& opt) {
    if (opt.tol <= 0) throw Error("tolerance must be positive");
    const int l = rs.rank();
    if (static_cast<int>(s0.a.size()) != l || static_cast<int>(s0.b.size()) != l ||
        static_cast<int>(s0.epsilon.size()) != l)
        throw Error("state size does not match rank");
    for (int i = 0; i < l; ++i)
        if (s0.b[i] != 0.0 && (s0.b[i] > 0) != (s0.epsilon[i] > 0))
            throw Error("sign(b_" + std::to_string(i + 1) + ") disagrees with epsilon");

    const bool type_a = rs.type_label() == 'A';
    const double dir = (t_end >= s0.t) ? 1.0 : -1.0;
    const int n = 2 * l;
    Rhs rhs{rs, l};

    std::vector<double> y(n), f1v(n), f2(n), f3(n), f4(n), f5(n), f6(n), ytmp(n), ynew(n),
        fnew(n);
    for (int i = 0; i < l; ++i) {
        y[i] = s0.a[i];
        y[l + i] = s0.b[i];
    }

    Trajectory traj;
    auto push_sample = [&](double t, const std::vector<double>& state,
                           const std::vector<double>& slope) {
        TrajectorySample s;
        s.t = t;
        s.a.assign(state.begin(), state.begin() + l);
        s.b.assign(state.begin() + l, state.end());
        traj.samples.push_back(std::move(s));
        traj.slopes.push_back(slope);
    };

    if (type_a) {
        traj.initial_invariants =
            lax_invariants(lax_matrix(rs, std::vector<double>(y.begin(), y.begin() + l),
                                      std::vector<double>(y.begin() + l, y.end())));
        traj.invariant_drift = 0.0;
    }

    double t = s0.t;
    rhs(y, f1v);
    push_sample(t, y, f1v);

    double span = std::fabs(t_end - s0.t);
    if (span == 0.0) {
        traj.reached_t_end = true;
        return traj;
    }
    double h = dir * std::min(1e-3 * std::max(1.0, span), span);

    std::vector<int> inc_count(l, 0);
    std::vector<double> prev_absb(l);
    for (int i = 0; i < l; ++i) prev_absb[i] = std::fabs(y[l + i]);
    // (t, |b_i|) history of the last few accepted steps, for the blow-up
    // time extrapolation.
    std::vector<double> hist_t;
    std::vector<std::vector<double>> hist_absb;

    auto record_drift = [&](const std::vector<double>& state) {
        if (!type_a) return;
        double big = 0.0;
        for (double v : state) big = std::max(big, std::fabs(v));
        if (big > opt.drift_cutoff) return;
        auto inv = lax_invariants(lax_matrix(rs, std::vector<double>(state.begin(), state.begin() + l),
                                             std::vector<double>(state.begin() + l, state.end())));
        double drift = 0.0;
        for (std::size_t k = 0; k < inv.size(); ++k) {
            double scale = std::max(1.0, std::fabs(traj.initial_invariants[k]));
            drift = std::max(drift, std::fabs(inv[k] - traj.initial_invariants[k]) / scale);
        }
        traj.invariant_drift = std::max(traj.invariant_drift.value_or(0.0), drift);
    };

    long long steps = 0;
    bool last = false;
    while (true) {
        if (++steps > opt.max_steps) throw ToleranceUnreachable("step budget exhausted");
        if (dir * (t + h - t_end) >= 0.0) {
            h = t_end - t;
            last = true;
        } else {
            last = false;
        }

        auto stage = [&](std::vector<double>& dst, std::initializer_list<std::pair<double, const std::vector<double>*>> terms) {
            for (int q = 0; q < n; ++q) {
                double acc = y[q];
                for (auto& [coef, vec] : terms) acc += h * coef * (*vec)[q];
                dst[q] = acc;
            }
        };
        stage(ytmp, {{A21, &f1v}});
        rhs(ytmp, f2);
        stage(ytmp, {{A31, &f1v}, {A32, &f2}});
        rhs(ytmp, f3);
        stage(ytmp, {{A41, &f1v}, {A42, &f2}, {A43, &f3}});
        rhs(ytmp, f4);
        stage(ytmp, {{A51, &f1v}, {A52, &f2}, {A53, &f3}, {A54, &f4}});
        rhs(ytmp, f5);
        stage(ytmp, {{A61, &f1v}, {A62, &f2}, {A63, &f3}, {A64, &f4}, {A65, &f5}});
        rhs(ytmp, f6);
        stage(ynew, {{B1, &f1v}, {B3, &f3}, {B4, &f4}, {B5, &f5}, {B6, &f6}});
        rhs(ynew, fnew);

        double err = 0.0;
        for (int q = 0; q < n; ++q) {
            double e = h * (E1 * f1v[q] + E3 * f3[q] + E4 * f4[q] + E5 * f5[q] + E6 * f6[q] +
                            E7 * fnew[q]);
            double sc = opt.tol + opt.tol * std::max(std::fabs(y[q]), std::fabs(ynew[q]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / n);

        if (err <= 1.0) {
            t = last ? t_end : t + h;
            y = ynew;
            f1v = fnew;  // FSAL
            push_sample(t, y, f1v);
            record_drift(y);

            for (int i = 0; i < l; ++i) {
                double ab = std::fabs(y[l + i]);
                inc_count[i] = (ab > prev_absb[i]) ? inc_count[i] + 1 : 0;
                prev_absb[i] = ab;
            }
            hist_t.push_back(t);
            hist_absb.push_back(prev_absb);
            if (hist_t.size() > 8) {
                hist_t.erase(hist_t.begin());
                hist_absb.erase(hist_absb.begin());
            }

            // Blow-up signature: |b_i| past the threshold, the accepted step
            // collapsed below the floor, and |b_i| grew monotonically.
            int worst = -1;
            double worst_b = 0.0;
            for (int i = 0; i < l; ++i) {
                if (prev_absb[i] > opt.blowup_threshold && inc_count[i] >= opt.monotone_steps &&
                    prev_absb[i] > worst_b) {
                    worst = i;
                    worst_b = prev_absb[i];
                }
            }
            if (worst >= 0 && std::fabs(h) < opt.step_floor) {
                BlowupEvent ev;
                ev.index = worst;
                // 1/|b| vanishes like (t* - t)^2; extrapolate sqrt(1/|b|)
                // linearly through the last two accepted samples.
                std::size_t m = hist_t.size();
                double q1 = std::sqrt(1.0 / hist_absb[m - 2][worst]);
                double q2 = std::sqrt(1.0 / hist_absb[m - 1][worst]);
                double t1 = hist_t[m - 2], t2 = hist_t[m - 1];
                ev.t_star = (q1 == q2) ? t2 : t2 + q2 * (t2 - t1) / (q1 - q2);
                ev.signs_after = blowup_transition(rs, s0.epsilon, worst);
                traj.events.push_back(std::move(ev));
                traj.reached_t_end = false;
                return traj;
            }

            if (last) {
                traj.reached_t_end = true;
                return traj;
            }
            double fac = 0.9 * std::pow(err > 1e-300 ? err : 1e-300, -0.2);
            h *= std::clamp(fac, 0.2, 5.0);
        } else {
            double fac = 0.9 * std::pow(err, -0.2);
            h *= std::clamp(fac, 0.2, 0.9);
            double dead = 1e-14 * std::max(1.0, std::fabs(t));
            if (std::fabs(h) < dead) {
                double big = 0.0;
                for (int i = 0; i < l; ++i) big = std::max(big, std::fabs(y[l + i]));
                throw ToleranceUnreachable("step size collapsed at t = " + std::to_string(t) +
                                           " without a blow-up signature (max |b| = " +
                                           std::to_string(big) + ")");
            }
        }
    }
}

}  // namespace todatopo
