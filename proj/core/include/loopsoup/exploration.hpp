#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loopsoup/config.hpp"

namespace loopsoup {

// Exploration processes: X traces the loop through a point of a fixed
// configuration; the on-the-fly variant builds the configuration while
// exploring it (Poisson construction); the simple exploration Y jumps to a
// fresh circle at every discovered link.  All three produce the same
// trajectory record so the counter invariants can be checked uniformly.

struct TrajEvent {
    enum class Kind : std::uint8_t { Jump, Backtrack, Level0, Close };
    double t;
    Kind kind;
    Vertex vertex; // vertex after a traversal; the visited vertex for Level0
    double phase;
    int dir; // direction after the event
    // running counters just after the event
    std::uint64_t J, I, K;
    int B;
    double L;
};

struct TrajStats {
    double tau = 0.0;      // closing time; equals t_end when censored
    bool censored = false; // true when t_max was hit before closing
    std::uint64_t J = 0;   // links discovered
    std::uint64_t I = 0;   // link traversals, backtracks included
    std::uint64_t K = 0;   // visits to level 0 (start visit counts when phi0 == 0)
    double L = 0.0;        // winding at t_end
    int B = 0;             // signed level-0 visit count
};

struct Trajectory {
    Vertex v0 = 0;
    double phi0 = 0.0;
    int d0 = +1;
    double t_end = 0.0;
    bool closed = false;
    double sup_abs_L = 0.0; // over [0, t_end]
    std::vector<TrajEvent> events;
};

// Drifted discovery process Z_t = N'_t - t; jump times are link discoveries.
struct ZPath {
    std::vector<double> jump_times;
    double horizon = 0.0;
};

struct FrontierDecomposition {
    std::vector<double> record_minima;  // m_k: jump times setting new pre-jump minima
    std::vector<double> frontier_times; // l_k: suffix-argmin chain of the same values
    std::vector<double> gaps;           // l_{k+1} - l_k
    bool censored = true;               // finite horizon: the last frontier is provisional
};

struct ExploreResult {
    Trajectory traj;
    TrajStats stats;
};

struct SimpleResult {
    Trajectory traj;
    TrajStats stats;
    ZPath zpath;
};

struct CouplingOutcome {
    bool agreed = true;     // X-tilde == Y' on [0, tauY ^ T)
    double fail_time = 0.0; // first proposal that hit a previously visited vertex
    double tau_y = 0.0;
    bool tau_censored = false;
};

ExploreResult explore(const Configuration& cfg, Vertex v0, double phi0, int d0, double t_max,
                      bool record_events = true);

ExploreResult explore_onfly(std::uint32_t n, double beta, double nu, std::uint64_t seed,
                            Vertex v0, double phi0, int d0, double t_max,
                            bool record_events = true);

// Y starts at (circle 0, vertex 1, phase 0, +1); its law does not depend on
// the starting point.
SimpleResult simple_explore(std::uint32_t n, double beta, double nu, std::uint64_t seed,
                            double t_max, bool record_events = true);

// Unique positive root of 1 - z = exp(-beta z); requires beta > 1.  Residual
// below 1e-12.
double solve_z(double beta);

// Rate-beta Poisson jump times up to `horizon` (the unstopped N' process).
ZPath simulate_zpath(double beta, double horizon, std::uint64_t seed);

// First time Z hits -1, i.e. the first j with no jump before j+1 wholly
// covered; +infinity if the path survives to its horizon.
double tau_from_zpath(const ZPath& zp);

FrontierDecomposition frontier_decompose(const ZPath& zp);

CouplingOutcome coupled_run(std::uint32_t n, double beta, double nu, std::uint64_t seed,
                            double T);

// sup_{t<=T} |L_t| from the piecewise-linear winding path; throws if the
// trajectory does not cover [0, T].
double winding_sup(const Trajectory& traj, double T);

// Number of violations of the deterministic trajectory invariants
//   K_t <= t + I_t + 1,   J <= I <= 2J,   | |B_t| - |L_t| | <= 3
// over all recorded event times; 0 for every valid trajectory.
int count_invariant_violations(const Trajectory& traj);

// One event per line: "t kind payload", kind in {jump, backtrack, level0, close}.
std::string trajectory_event_log(const Trajectory& traj);

} // namespace loopsoup
