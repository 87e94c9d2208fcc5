#pragma once

#include "thirring/gates.hpp"
#include "thirring/observables.hpp"
#include "thirring/statevector.hpp"

#include <random>
#include <string>
#include <vector>

namespace thirring {

/// Sparse Pauli-Lindblad channel: product over model terms of
/// rho -> w rho + (1-w) P rho P^dag with w = (1 + e^{-2 lambda})/2.
struct PauliLindbladModel {
  int n_qubits = 0;
  struct Term {
    std::string ops;  // length n_qubits over {I,X,Y,Z}
    double rate = 0.0;
  };
  std::vector<Term> terms;

  void validate() const;
};

/// Applies the total channel Lambda^gain (base circuit noise at gain = 1).
DensityMatrix apply_channel(const DensityMatrix& rho,
                            const PauliLindbladModel& model, double gain);

// ---------------------------------------------------------------------------
// Pauli twirling of CNOT layers

struct CnotLayer {
  int n_qubits = 0;
  std::vector<std::pair<int, int>> cnots;  // (control, target), disjoint
};

struct TwirlInstance {
  std::string before;  // Pauli per qubit
  std::string after;   // layer-conjugated compensation
  double sign = 1.0;   // so that sign * after . L . before == L exactly
};

/// Uniformly random Pauli dressing with the exact Clifford-propagated
/// compensation.
TwirlInstance sample_twirl(const CnotLayer& layer, std::mt19937_64& rng);

/// Conjugates an n-qubit Pauli string through the layer: L P L^dag.
TwirlInstance conjugate_through_layer(const CnotLayer& layer,
                                      const std::string& before);

// ---------------------------------------------------------------------------
// Readout

struct ReadoutModel {
  double p01 = 0.0;  // P(read 1 | true 0)
  double p10 = 0.0;  // P(read 0 | true 1)
};

/// Z-basis measurement of one qubit from a density matrix with classical
/// bit-flip readout error, optional X twirling, and binomial shot noise.
/// shots <= 0 gives the infinite-shot mean of the modeled (possibly biased)
/// estimator.
ShotEstimate measure_z_readout(const DensityMatrix& rho, int qubit,
                               const ReadoutModel& readout, bool twirl,
                               long shots, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Zero-noise extrapolation

struct ZneFit {
  enum class Model { linear, exponential };
  std::vector<double> gains;
  std::vector<double> means;
  std::vector<double> errors;
  Model model = Model::linear;
  double value = 0.0;         // G -> 0 extrapolation of the chosen model
  double value_stderr = 0.0;  // propagated from point errors
  double residual_linear = 0.0;
  double residual_exponential = 0.0;
  bool exponential_rejected = false;  // sign-changing data forced linear
};

/// Fits y = a + bG and y = a e^{-bG}; keeps the smaller-residual model.
ZneFit zne_extrapolate(const std::vector<double>& gains,
                       const std::vector<double>& means,
                       const std::vector<double>& errors);

// ---------------------------------------------------------------------------
// Layered noisy-circuit simulation (desk-scale density matrices)

/// A Givens program lowered to CNOT layers: single-qubit segments alternate
/// with entangling layers; the layer noise channel attaches after each
/// entangling layer.
struct LayeredNoisyCircuit {
  int n_qubits = 0;
  std::vector<Eigen::MatrixXcd> segments;  // segments[i] precedes layers[i]
  std::vector<CnotLayer> layers;           // size = segments.size() - 1
};

LayeredNoisyCircuit lower_to_cnot_layers(const GateProgram& program);

/// Density-matrix run of one twirled instance at the given noise gain,
/// returning the state before measurement.
DensityMatrix run_noisy_instance(const LayeredNoisyCircuit& circuit,
                                 const PauliLindbladModel& layer_noise,
                                 double gain, bool twirl,
                                 std::mt19937_64& rng);

struct ZneExperimentResult {
  double noiseless_z = 0.0;
  std::vector<double> gains;
  std::vector<double> means;
  std::vector<double> stderrs;
  ZneFit fit;
};

/// Full pipeline on a single-site Z observable: twirled instances at each
/// gain, shot-sampled readout, and the zero-noise extrapolation.
ZneExperimentResult run_zne_experiment(const GateProgram& program,
                                       int observable_site,
                                       const PauliLindbladModel& layer_noise,
                                       const std::vector<double>& gains,
                                       int instances, long shots,
                                       const ReadoutModel& readout,
                                       std::uint64_t seed);

/// Pauli-decay fixture: expectation of `probe` after `repetitions` of the
/// noisy layer, as used by rate-learning fits.
double learning_decay_point(const CnotLayer& layer,
                            const PauliLindbladModel& layer_noise,
                            const std::string& probe, int repetitions);

}  // namespace thirring
