#pragma once

#include <optional>
#include <vector>

#include "todatopo/rootsys.hpp"

namespace todatopo {

/// Phase point of the (a, b) system.  Between blow-ups sign(b_i) equals
/// epsilon_i whenever b_i != 0.
struct TodaState {
    std::vector<double> a;
    std::vector<double> b;
    std::vector<int> epsilon;
    double t = 0.0;
};

struct BlowupEvent {
    int index = 0;            // which b_i diverged
    double t_star = 0.0;      // estimated blow-up time
    std::vector<int> signs_after;
};

struct TrajectorySample {
    double t = 0.0;
    std::vector<double> a;
    std::vector<double> b;
};

/// Integrated path.  Samples are the accepted integrator steps (strictly
/// monotone in t); `at` interpolates with the cubic Hermite dense output.
struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<BlowupEvent> events;
    std::optional<double> invariant_drift;   // type A only
    std::vector<double> initial_invariants;  // type A only
    bool reached_t_end = false;

    TrajectorySample at(double t) const;

    // dense-output slopes per sample, [da..., db...]
    std::vector<std::vector<double>> slopes;
};

struct IntegrateOptions {
    double tol = 1e-10;  // absolute and relative
    double blowup_threshold = 1e8;
    double step_floor = 1e-10;
    int monotone_steps = 5;
    /// Invariant drift is monitored only while max(|a|,|b|) stays below
    /// this; near a blow-up the char-poly evaluation loses all digits.
    double drift_cutoff = 1e3;
    long long max_steps = 20000000;
};

/// Right-hand side da_i = b_i, db_i = -b_i sum_j C_ij a_j.  Defined for any
/// Cartan matrix in scope, including points with b_i = 0.
void toda_rhs(const RootSystem& rs, const std::vector<double>& a, const std::vector<double>& b,
              std::vector<double>& da, std::vector<double>& db);

/// Jacobi matrix of the defining representation, type A only:
/// unit superdiagonal, subdiagonal b, diagonal a_k - a_{k-1}.
std::vector<std::vector<double>> lax_matrix(const RootSystem& rs, const std::vector<double>& a,
                                            const std::vector<double>& b);

/// P = -(subdiagonal part of X), strictly lower bidiagonal.
std::vector<std::vector<double>> lax_p_matrix(const RootSystem& rs, const std::vector<double>& b);

/// Coefficients c_2..c_{l+1} of det(lambda I - X) = lambda^{l+1} +
/// c_2 lambda^{l-1} + ... + c_{l+1} (the trace term vanishes).
std::vector<double> lax_invariants(const std::vector<std::vector<double>>& X);

/// b_i = eps_i exp(-sum_j C_ij f_j).
std::vector<double> b_from_f(const RootSystem& rs, const std::vector<double>& f,
                             const std::vector<int>& eps);

/// q_i = f_i - f_{i+1} with f_{l+1} = 0 (type A convenience).
std::vector<double> positions_from_f(const std::vector<double>& f);

/// Adaptive RK5(4) integration with isospectral-drift monitoring and
/// finite-time blow-up detection.  Supports t_end on either side of s0.t;
/// stops at the first blow-up event (no continuation through it).
Trajectory integrate(const RootSystem& rs, const TodaState& s0, double t_end,
                     const IntegrateOptions& opt = IntegrateOptions{});

}  // namespace todatopo
