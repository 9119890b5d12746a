// Copyright 2026 The Paragate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "paragate/circuit.hpp"
#include "paragate/common.hpp"
#include "paragate/fock.hpp"

namespace paragate {

// Fock occupation (n_a, n_b, n_c) naming a dressed state.
using Label = std::vector<int>;

Label parse_label(std::string_view digits);  // "110" -> {1, 1, 0}
std::string to_string(const Label& label);

struct StaticReference {
  FockLayout layout;
  Eigen::VectorXd energies;   // ascending, rad/ns
  Eigen::MatrixXcd vectors;   // column i belongs to energies(i)
  std::vector<Label> labels;  // label of column i
  std::map<Label, Eigen::Index> index;

  Eigen::Index at(const Label& label) const;
  double energy(const Label& label) const { return energies(at(label)); }
};

// Full spectrum of a static Hamiltonian with a one-to-one assignment of Fock
// labels: pairs (eigenvector, Fock state) are taken greedily in order of
// decreasing overlap, lower energy first on ties.
StaticReference static_eigensolve(const OperatorMatrix& h0);

enum class Integrator {
  magnus4,   // two-point Gauss fourth-order Magnus step
  midpoint,  // exp(-i H(t + dt/2) dt)
};

struct PropagatorOptions {
  double tol = 1e-10;
  int grid_points = 128;   // stored U(t_i, 0); 0 keeps none
  int initial_steps = 128; // rounded up to a multiple of grid_points
  int max_steps = 1 << 15;
  bool adaptive = true;    // step doubling until successive results agree to tol
  Integrator integrator = Integrator::magnus4;
};

struct Propagation {
  Eigen::MatrixXcd U;                  // U(T, 0)
  std::vector<Eigen::MatrixXcd> grid;  // U(i T / G, 0), i = 0..G-1
  double omega_d = 0;
  double period = 0;
  int steps = 0;
  double error_estimate = 0;           // last doubling difference; NaN if fixed
  Integrator integrator = Integrator::magnus4;
};

// Throws NumericalError when max_steps is reached before convergence.
Propagation propagate_one_period(const HarmonicHamiltonian& h, double omega_d,
                                 const PropagatorOptions& options = {});

// U(t1, t0) with `steps` equal steps; no error control.
Eigen::MatrixXcd propagate(const HarmonicHamiltonian& h, double omega_d, double t0, double t1,
                           int steps, Integrator integrator = Integrator::magnus4);

// Brute-force evolution over n_periods by restepping every period with the
// given steps per period. Reference cost for the Floquet shortcut.
Eigen::MatrixXcd simulate_time_domain(const HarmonicHamiltonian& h, double omega_d,
                                      int n_periods, int steps_per_period,
                                      Integrator integrator = Integrator::magnus4);

// Representative of e in [-omega/2, omega/2).
double fold(double e, double omega);
// e + k omega closest to target.
double unfold_near(double e, double omega, double target);

struct LabelInfo {
  Eigen::Index mode = -1;
  double overlap = 0;  // |<reference|mode>|^2
  int k = 0;           // unfolded quasienergy = folded + k omega_d
};

struct FloquetSolution {
  double omega_d = 0;
  double period = 0;
  double threshold = 0.5;
  Eigen::VectorXd quasienergies;  // folded
  Eigen::VectorXd unfolded;       // per mode; equals the folded value for unlabeled modes
  Eigen::MatrixXcd modes_t0;
  std::map<Label, LabelInfo> labels;
  std::set<Label> excluded;

  bool tracked(const Label& label) const;
  const LabelInfo& info(const Label& label) const;
  double energy(const Label& label) const { return unfolded(info(label).mode); }
};

// Eigen-decomposes the one-period propagator and labels each mode by its best
// overlap with the static reference (one-to-one, greedy). Labels whose
// overlap^2 falls below `threshold` are excluded. Of two modes whose
// eigenphases coincide within 1e-12 and that are not both clean Fock-like
// states, the label with the smaller overlap is excluded as well.
FloquetSolution floquet_decompose(const Eigen::MatrixXcd& U, double omega_d,
                                  const StaticReference& ref, double threshold = 0.5);

// Two labeled levels that the drive brings into resonance, resolved as an
// effective two-level problem in the frame where the second level is shifted
// by m omega_d (m = round((E1 - E2)/omega_d)).
struct PairResolution {
  double J = 0;         // |off-diagonal| of the effective 2x2 Hamiltonian
  double detuning = 0;  // H_11 - H_22 of the same matrix, rad/ns
  double gap = 0;       // splitting of the two Floquet modes
  double sum = 0;       // sum of both quasienergies unfolded next to E1 + E2
  double level_first = 0;   // H_11: dressed energy of the first level
  double level_second = 0;  // H_22 - m omega_d: dressed energy of the second level
  double weight = 0;    // smaller of the two modes' weights in the pair subspace
  int photons = 0;      // m
  bool tracked = false;
};

PairResolution resolve_pair(const FloquetSolution& solution, const StaticReference& ref,
                            const Label& first, const Label& second);

// chi = eps_110 - (eps_100 + eps_010) + eps_000 with the middle pair taken as
// a sum, which stays well defined when the drive hybridizes 100 and 010.
struct WalshResult {
  double chi = 0;
  bool tracked = false;
};
WalshResult walsh_cross_kerr(const FloquetSolution& solution, const StaticReference& ref);

enum class CalibrationMethod {
  golden,     // minimize the gap by golden-section search
  two_level,  // Newton on the effective detuning, J from the mixing matrix
};

struct CalibrationOptions {
  CalibrationMethod method = CalibrationMethod::golden;
  PropagatorOptions propagator;
  double threshold = 0.5;
  double tol = kTwoPi * 1e-6;  // on omega_d
  int newton_iterations = 6;
};

struct Calibration {
  double omega_d = 0;
  double gap = 0;
  double J = 0;
  int solves = 0;
  PairResolution pair;
  FloquetSolution solution;
  Propagation propagation;
};

// Drive frequency at which the labeled pair is resonant. Starts with Newton
// steps on the two-level detuning, then (golden method) brackets the result by
// +-max(3J, 2 pi 1e-4) and minimizes the gap. Throws NumericalError if the
// minimum lands on a bracket edge or a label is lost.
Calibration calibrate_drive_frequency(const HarmonicHamiltonian& h, const StaticReference& ref,
                                      double guess, const Label& first, const Label& second,
                                      const CalibrationOptions& options = {});

struct RabiTrace {
  std::vector<double> times;  // stroboscopic, ns
  std::map<Label, std::vector<double>> populations;
};

// Populations of the requested static eigenstates after n = 0..n_periods
// applications of U(T, 0), starting from the static eigenstate `initial`.
RabiTrace rabi_crosscheck(const Propagation& propagation, const StaticReference& ref,
                          const Label& initial, const std::vector<Label>& watch, int n_periods);

// Floquet modes e^{i eps t_i} U(t_i, 0) |phi(0)> on the stored grid, using the
// unfolded quasienergies. Element i holds all modes as columns.
std::vector<Eigen::MatrixXcd> floquet_modes_on_grid(const FloquetSolution& solution,
                                                    const Propagation& propagation);

}  // namespace paragate
