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

#include <functional>
#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "paragate/config.hpp"
#include "paragate/floquet.hpp"

namespace paragate {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

HarmonicHamiltonian build_hamiltonian(const ModelPoint& point);
// Same model with the modulation switched off.
HarmonicHamiltonian build_undriven(const ModelPoint& point);
// Charge-like probe of one mode: the bare charge operator for the circuit,
// -i(a - a^dag)/sqrt 2 for the toy model.
OperatorMatrix probe_operator(const ModelPoint& point, std::size_t mode);

// Label with n_a, n_b set and the remaining modes empty.
Label qubit_label(const FockLayout& layout, int na, int nb);

// Drive frequency for the policy in `settings`; calibration runs without a
// stored grid.
double select_drive_frequency(const ModelPoint& point, const FloquetSettings& settings,
                              const HarmonicHamiltonian& h, const StaticReference& ref);

// J = gap / 2 when both labels are tracked, NaN otherwise.
double gate_amplitude(const FloquetSolution& solution, const StaticReference& ref,
                      const Label& first, const Label& second);
// Walsh combination of unfolded quasienergies; NaN if a label is excluded.
double dynamical_cross_kerr(const FloquetSolution& solution, const StaticReference& ref);
// E_110 - E_100 - E_010 + E_000.
double static_cross_kerr(const StaticReference& ref);

struct SpectroscopyPoint {
  double delta = 0;   // transition frequency, rad/ns
  double weight = 0;  // |X_abk|
  Label alpha, beta;
  int k = 0;
  bool excluded = false;  // either label failed tracking
};

// Fourier components of <phi_beta(t)|X|phi_alpha(t)> over one period on the
// stored grid, for alpha != beta drawn from `labels` and k in [k_min, k_max].
std::vector<SpectroscopyPoint> two_tone_spectrum(const FloquetSolution& solution,
                                                 const Propagation& propagation,
                                                 const OperatorMatrix& probe,
                                                 const std::vector<Label>& labels, int k_min,
                                                 int k_max);

struct AnalysisMode {
  bool analytic = true;
  bool floquet = true;
};

// One sweep row. Frequencies in GHz; NaN marks unavailable values.
struct GateReport {
  std::vector<double> key;
  double J1 = kNaN, J2_bessel = kNaN, chi1 = kNaN, chi2 = kNaN;
  double J_floquet = kNaN, chi_floquet = kNaN, chi_static = kNaN;
  double omega_d_star = kNaN, gap = kNaN;
  std::map<std::string, double> stark;  // label -> shift from the undriven level
  bool excluded = false;
  std::vector<std::string> flags;
  int floquet_solves = 0;
};

GateReport evaluate_point(const ModelPoint& point, const FloquetSettings& settings,
                          const AnalysisMode& mode, double den_tol = kDefaultDenTol);

// Grid in row order: the first axis varies fastest.
std::vector<std::vector<double>> sweep_grid(const std::vector<SweepAxis>& axes);
ModelPoint point_at(const RunConfig& cfg, const std::vector<double>& key);

// OpenMP over grid points (threads <= 0: runtime default). Failures become
// flagged rows. Output is in grid order regardless of scheduling.
std::vector<GateReport> sweep(const RunConfig& cfg, const AnalysisMode& mode, int threads = 0);
// Reference implementation of the same loop on the calling thread.
std::vector<GateReport> sweep_serial(const RunConfig& cfg, const AnalysisMode& mode);

enum class ChiSource { floquet, static_walsh, analytic };

struct ChiZero {
  double slice = 0;    // second-axis value (0 for one-axis sweeps)
  double control = 0;  // first-axis value at chi = 0
  double J = kNaN;     // gate amplitude at the root, GHz
  double chi_residual = kNaN;
  double dchi_dslice = kNaN;
  bool refined = false;
  bool sweet_spot = false;
};

struct TracePoint {
  double slice = 0;
  int region = 0;  // index of the interval between successive zeros
  double control = 0, chi = 0, J = kNaN;
};

struct ChiZeroCurve {
  std::vector<ChiZero> zeros;
  std::vector<ChiZero> poles;  // sign changes rejected as poles
  std::vector<TracePoint> traces;
  std::vector<std::string> notes;
};

// Re-solves a single point; used to refine interpolated roots.
using PointEvaluator = std::function<GateReport(double control, double slice)>;

// Roots of chi along the first axis for every value of the second axis.
// Each bracket is located by linear interpolation and, when `refine` is set,
// improved by two false-position re-solves. Sign changes through a pole
// (|chi| growing into the bracket) are skipped with a note. Roots where |d chi / d slice|
// is below `sweet_tol` are marked as sweet spots.
ChiZeroCurve chi_zero_curve(const std::vector<GateReport>& table, ChiSource source,
                            const PointEvaluator& refine = {}, double sweet_tol = 1e-2);

double chi_of(const GateReport& r, ChiSource source);
double gate_of(const GateReport& r);

void write_reports_csv(std::ostream& out, const std::vector<SweepAxis>& axes,
                       const std::vector<GateReport>& rows);
void write_spectrum_csv(std::ostream& out, const std::vector<std::string>& key_names,
                        const std::vector<double>& key,
                        const std::vector<SpectroscopyPoint>& points, bool header);
void write_chi_zero_csv(std::ostream& out, const ChiZeroCurve& curve);

// JSON mirror of a run: config echo, version, timings and free-form notes.
void write_metadata(std::ostream& out, const RunConfig& cfg, const std::string& command,
                    double seconds, const std::map<std::string, std::string>& extra = {});

}  // namespace paragate
