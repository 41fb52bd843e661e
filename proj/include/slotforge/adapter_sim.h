// Copyright 2026 The Slotforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference model of the speech-to-LLM modality adapter: consecutive encoder
// frames are stacked k at a time and projected by a two-layer MLP into the
// LLM embedding width.
//
//   x: N x d_enc  --stack k-->  ceil(N/k) x (k * d_enc)
//                 --act(x W1 + b1) W2 + b2-->  ceil(N/k) x d_llm
//
// With the default k = 4 on top of an encoder that already halves the frame
// rate, one adapter frame covers eight input audio frames.

#ifndef SLOTFORGE_ADAPTER_SIM_H_
#define SLOTFORGE_ADAPTER_SIM_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace slotforge {

enum class PadPolicy { kZeroPad, kTruncate };
enum class Activation { kGelu, kTanh, kIdentity };

std::string_view PadPolicyName(PadPolicy policy);
std::string_view ActivationName(Activation activation);

struct AdapterConfig {
  int d_enc = 512;        // Whisper-base encoder width
  int stack_factor = 4;
  int d_hidden = 2048;    // k * d_enc
  int d_llm = 2048;
  PadPolicy pad_policy = PadPolicy::kZeroPad;
  Activation activation = Activation::kGelu;

  // Throws Error(kInvalidConfig).
  void Validate() const;
  // Number of output frames for N encoder frames (0 when truncation leaves
  // nothing).
  int OutputFrames(int n) const;
};

template <typename Scalar>
using FrameMatrixT =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using VectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using FrameMatrix = FrameMatrixT<double>;

template <typename Scalar>
struct AdapterParamsT {
  FrameMatrixT<Scalar> w1;  // (k * d_enc) x d_hidden
  VectorT<Scalar> b1;       // d_hidden
  FrameMatrixT<Scalar> w2;  // d_hidden x d_llm
  VectorT<Scalar> b2;       // d_llm

  int64_t ParameterCount() const {
    return w1.size() + b1.size() + w2.size() + b2.size();
  }
  template <typename Other>
  AdapterParamsT<Other> Cast() const {
    return {w1.template cast<Other>(), b1.template cast<Other>(),
            w2.template cast<Other>(), b2.template cast<Other>()};
  }
};

using AdapterParams = AdapterParamsT<double>;

// Throws Error(kEmptyInput) for N = 0 and Error(kDegenerateOutput) when
// truncation would leave no rows.
template <typename Scalar>
FrameMatrixT<Scalar> StackFrames(const FrameMatrixT<Scalar> &x, int k,
                                 PadPolicy policy);

// Throws Error(kShapeMismatch).
template <typename Scalar>
FrameMatrixT<Scalar> MlpForward(const FrameMatrixT<Scalar> &x,
                                const AdapterParamsT<Scalar> &params,
                                Activation activation);

template <typename Scalar>
FrameMatrixT<Scalar> AdapterForward(const FrameMatrixT<Scalar> &x,
                                    const AdapterConfig &config,
                                    const AdapterParamsT<Scalar> &params);

// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights and biases from a
// SplitMix64 stream.
AdapterParams RandomAdapterParams(int d_in, int d_hidden, int d_out,
                                  uint64_t seed);
AdapterParams RandomAdapterParams(const AdapterConfig &config, uint64_t seed);
FrameMatrix RandomFrames(int rows, int cols, uint64_t seed);

// Loss used for gradient validation: sum of squared adapter outputs.
double SquaredOutputLoss(const AdapterParams &params, const FrameMatrix &x,
                         Activation activation);

// Analytic gradient of SquaredOutputLoss, laid out like the parameters.
AdapterParams SquaredOutputLossGradient(const AdapterParams &params,
                                        const FrameMatrix &x,
                                        Activation activation);

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::string worst_tensor;
  int64_t worst_index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  int64_t parameters_checked = 0;
};

// Compares the analytic gradient against central differences with step
// `eps` on every parameter. The relative error of one entry is
// |a - n| / max(|a|, |n|, 1e-8). Throws Error(kInvalidArgument) for a
// non-positive eps and Error(kNonFiniteGradient) if either side is not
// finite. `x` is the already stacked MLP input.
GradCheckResult GradCheck(const AdapterParams &params, const FrameMatrix &x,
                          Activation activation, double eps);

// JSON bundle: {"format": "slotforge.adapter_params.v1", "tensors":
// {"w1": {"shape": [r, c], "data": [...]}, "b1": {"shape": [n], ...}, ...}},
// data row-major.
void SaveAdapterParams(const std::filesystem::path &path,
                       const AdapterParams &params);
AdapterParams LoadAdapterParams(const std::filesystem::path &path);

}  // namespace slotforge

#endif  // SLOTFORGE_ADAPTER_SIM_H_
