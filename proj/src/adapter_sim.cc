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

#include "slotforge/adapter_sim.h"

#include <cmath>

#include "json.hpp"
#include "slotforge/errors.h"
#include "slotforge/io.h"
#include "slotforge/rng.h"

namespace slotforge {

namespace {

template <typename Scalar>
Scalar Activate(Scalar v, Activation activation) {
  switch (activation) {
    case Activation::kGelu:
      return Scalar(0.5) * v *
             (Scalar(1) + std::erf(v / std::sqrt(Scalar(2))));
    case Activation::kTanh:
      return std::tanh(v);
    case Activation::kIdentity:
      return v;
  }
  return v;
}

double ActivateDerivative(double v, Activation activation) {
  switch (activation) {
    case Activation::kGelu: {
      double cdf = 0.5 * (1.0 + std::erf(v / std::sqrt(2.0)));
      double pdf = std::exp(-0.5 * v * v) / std::sqrt(2.0 * M_PI);
      return cdf + v * pdf;
    }
    case Activation::kTanh: {
      double t = std::tanh(v);
      return 1.0 - t * t;
    }
    case Activation::kIdentity:
      return 1.0;
  }
  return 1.0;
}

[[noreturn]] void ShapeMismatch(const std::string &what) {
  throw Error(ErrorCode::kShapeMismatch, what);
}

std::string Shape(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

template <typename Scalar>
void CheckShapes(const FrameMatrixT<Scalar> &x,
                 const AdapterParamsT<Scalar> &p) {
  if (x.cols() != p.w1.rows()) {
    ShapeMismatch("input " + Shape(x.rows(), x.cols()) + " vs W1 " +
                  Shape(p.w1.rows(), p.w1.cols()));
  }
  if (p.b1.size() != p.w1.cols()) ShapeMismatch("b1 does not match W1");
  if (p.w2.rows() != p.w1.cols()) {
    ShapeMismatch("W1 " + Shape(p.w1.rows(), p.w1.cols()) + " vs W2 " +
                  Shape(p.w2.rows(), p.w2.cols()));
  }
  if (p.b2.size() != p.w2.cols()) ShapeMismatch("b2 does not match W2");
}

double Uniform(SplitMix64 &rng, double scale) {
  double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  return (2.0 * unit - 1.0) * scale;
}

// Visits every parameter as (tensor name, flat index, reference).
template <typename Fn>
void ForEachParameter(AdapterParams &p, Fn fn) {
  for (Eigen::Index i = 0; i < p.w1.size(); ++i) fn("w1", i, p.w1.data()[i]);
  for (Eigen::Index i = 0; i < p.b1.size(); ++i) fn("b1", i, p.b1.data()[i]);
  for (Eigen::Index i = 0; i < p.w2.size(); ++i) fn("w2", i, p.w2.data()[i]);
  for (Eigen::Index i = 0; i < p.b2.size(); ++i) fn("b2", i, p.b2.data()[i]);
}

nlohmann::json TensorJson(const double *data, Eigen::Index size,
                          std::vector<int64_t> shape) {
  return {{"shape", shape},
          {"data", std::vector<double>(data, data + size)}};
}

std::vector<double> ReadTensor(const nlohmann::json &tensors, const char *name,
                               size_t rank, std::vector<int64_t> *shape) {
  auto it = tensors.find(name);
  if (it == tensors.end()) {
    throw Error(ErrorCode::kMalformedLine,
                std::string("parameter bundle lacks tensor ") + name);
  }
  *shape = it->at("shape").get<std::vector<int64_t>>();
  std::vector<double> data = it->at("data").get<std::vector<double>>();
  int64_t expected = 1;
  for (int64_t d : *shape) expected *= d;
  if (shape->size() != rank || expected != static_cast<int64_t>(data.size())) {
    ShapeMismatch(std::string("tensor ") + name +
                  " shape does not match its data");
  }
  return data;
}

}  // namespace

std::string_view PadPolicyName(PadPolicy policy) {
  return policy == PadPolicy::kZeroPad ? "zero_pad" : "truncate";
}

std::string_view ActivationName(Activation activation) {
  switch (activation) {
    case Activation::kGelu: return "gelu";
    case Activation::kTanh: return "tanh";
    case Activation::kIdentity: return "identity";
  }
  return "gelu";
}

void AdapterConfig::Validate() const {
  auto check = [](int value, const char *name) {
    if (value < 1) {
      throw Error(ErrorCode::kInvalidConfig,
                  std::string(name) + " must be >= 1, got " +
                      std::to_string(value));
    }
  };
  check(d_enc, "d_enc");
  check(stack_factor, "stack_factor");
  check(d_hidden, "d_hidden");
  check(d_llm, "d_llm");
}

int AdapterConfig::OutputFrames(int n) const {
  if (pad_policy == PadPolicy::kZeroPad) {
    return (n + stack_factor - 1) / stack_factor;
  }
  return n / stack_factor;
}

template <typename Scalar>
FrameMatrixT<Scalar> StackFrames(const FrameMatrixT<Scalar> &x, int k,
                                 PadPolicy policy) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "stack factor < 1");
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  if (n == 0) throw Error(ErrorCode::kEmptyInput, "no input frames");
  const Eigen::Index m =
      policy == PadPolicy::kZeroPad ? (n + k - 1) / k : n / k;
  if (m == 0) {
    throw Error(ErrorCode::kDegenerateOutput,
                std::to_string(n) + " frames are fewer than the stack factor " +
                    std::to_string(k));
  }
  FrameMatrixT<Scalar> out = FrameMatrixT<Scalar>::Zero(m, k * d);
  for (Eigen::Index row = 0; row < m; ++row) {
    for (Eigen::Index j = 0; j < k; ++j) {
      Eigen::Index src = row * k + j;
      if (src >= n) break;
      out.block(row, j * d, 1, d) = x.row(src);
    }
  }
  return out;
}

template <typename Scalar>
FrameMatrixT<Scalar> MlpForward(const FrameMatrixT<Scalar> &x,
                                const AdapterParamsT<Scalar> &params,
                                Activation activation) {
  CheckShapes(x, params);
  FrameMatrixT<Scalar> hidden = x * params.w1;
  hidden.rowwise() += params.b1.transpose();
  hidden = hidden.unaryExpr(
      [activation](Scalar v) { return Activate(v, activation); });
  FrameMatrixT<Scalar> out = hidden * params.w2;
  out.rowwise() += params.b2.transpose();
  return out;
}

template <typename Scalar>
FrameMatrixT<Scalar> AdapterForward(const FrameMatrixT<Scalar> &x,
                                    const AdapterConfig &config,
                                    const AdapterParamsT<Scalar> &params) {
  config.Validate();
  if (x.cols() != config.d_enc) {
    ShapeMismatch("input width " + std::to_string(x.cols()) + " vs d_enc " +
                  std::to_string(config.d_enc));
  }
  if (params.w1.rows() != static_cast<Eigen::Index>(config.stack_factor) *
                              config.d_enc ||
      params.w1.cols() != config.d_hidden || params.w2.cols() != config.d_llm) {
    ShapeMismatch("parameters do not match the adapter config");
  }
  return MlpForward(StackFrames(x, config.stack_factor, config.pad_policy),
                    params, config.activation);
}

template FrameMatrixT<double> StackFrames(const FrameMatrixT<double> &, int,
                                          PadPolicy);
template FrameMatrixT<float> StackFrames(const FrameMatrixT<float> &, int,
                                         PadPolicy);
template FrameMatrixT<double> MlpForward(const FrameMatrixT<double> &,
                                         const AdapterParamsT<double> &,
                                         Activation);
template FrameMatrixT<float> MlpForward(const FrameMatrixT<float> &,
                                        const AdapterParamsT<float> &,
                                        Activation);
template FrameMatrixT<double> AdapterForward(const FrameMatrixT<double> &,
                                             const AdapterConfig &,
                                             const AdapterParamsT<double> &);
template FrameMatrixT<float> AdapterForward(const FrameMatrixT<float> &,
                                            const AdapterConfig &,
                                            const AdapterParamsT<float> &);

AdapterParams RandomAdapterParams(int d_in, int d_hidden, int d_out,
                                  uint64_t seed) {
  SplitMix64 rng(seed);
  AdapterParams p;
  const double s1 = 1.0 / std::sqrt(static_cast<double>(d_in));
  const double s2 = 1.0 / std::sqrt(static_cast<double>(d_hidden));
  p.w1.resize(d_in, d_hidden);
  p.b1.resize(d_hidden);
  p.w2.resize(d_hidden, d_out);
  p.b2.resize(d_out);
  for (Eigen::Index i = 0; i < p.w1.size(); ++i) p.w1.data()[i] = Uniform(rng, s1);
  for (Eigen::Index i = 0; i < p.b1.size(); ++i) p.b1.data()[i] = Uniform(rng, s1);
  for (Eigen::Index i = 0; i < p.w2.size(); ++i) p.w2.data()[i] = Uniform(rng, s2);
  for (Eigen::Index i = 0; i < p.b2.size(); ++i) p.b2.data()[i] = Uniform(rng, s2);
  return p;
}

AdapterParams RandomAdapterParams(const AdapterConfig &config, uint64_t seed) {
  config.Validate();
  return RandomAdapterParams(config.stack_factor * config.d_enc,
                             config.d_hidden, config.d_llm, seed);
}

FrameMatrix RandomFrames(int rows, int cols, uint64_t seed) {
  SplitMix64 rng(seed);
  FrameMatrix x(rows, cols);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = Uniform(rng, 1.0);
  return x;
}

double SquaredOutputLoss(const AdapterParams &params, const FrameMatrix &x,
                         Activation activation) {
  return MlpForward(x, params, activation).squaredNorm();
}

AdapterParams SquaredOutputLossGradient(const AdapterParams &params,
                                        const FrameMatrix &x,
                                        Activation activation) {
  CheckShapes(x, params);
  FrameMatrix pre = x * params.w1;
  pre.rowwise() += params.b1.transpose();
  FrameMatrix hidden =
      pre.unaryExpr([activation](double v) { return Activate(v, activation); });
  FrameMatrix out = hidden * params.w2;
  out.rowwise() += params.b2.transpose();

  FrameMatrix d_out = 2.0 * out;
  AdapterParams grad;
  grad.w2 = hidden.transpose() * d_out;
  grad.b2 = d_out.colwise().sum().transpose();
  FrameMatrix d_hidden = d_out * params.w2.transpose();
  FrameMatrix d_pre = d_hidden.cwiseProduct(pre.unaryExpr(
      [activation](double v) { return ActivateDerivative(v, activation); }));
  grad.w1 = x.transpose() * d_pre;
  grad.b1 = d_pre.colwise().sum().transpose();
  return grad;
}

GradCheckResult GradCheck(const AdapterParams &params, const FrameMatrix &x,
                          Activation activation, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::kInvalidArgument,
                "finite-difference step must be positive");
  }
  AdapterParams analytic = SquaredOutputLossGradient(params, x, activation);
  AdapterParams probe = params;

  std::vector<double> analytic_flat;
  ForEachParameter(analytic, [&](const char *, Eigen::Index, double &g) {
    analytic_flat.push_back(g);
  });

  GradCheckResult result;
  size_t flat = 0;
  ForEachParameter(probe, [&](const char *name, Eigen::Index index,
                              double &value) {
    const double saved = value;
    value = saved + eps;
    const double up = SquaredOutputLoss(probe, x, activation);
    value = saved - eps;
    const double down = SquaredOutputLoss(probe, x, activation);
    value = saved;

    const double numeric = (up - down) / (2.0 * eps);
    const double a = analytic_flat[flat++];
    if (!std::isfinite(numeric) || !std::isfinite(a)) {
      throw Error(ErrorCode::kNonFiniteGradient,
                  std::string(name) + "[" + std::to_string(index) + "]");
    }
    const double denom =
        std::max({std::fabs(a), std::fabs(numeric), 1e-8});
    const double rel = std::fabs(a - numeric) / denom;
    ++result.parameters_checked;
    if (rel > result.max_relative_error || result.parameters_checked == 1) {
      result.max_relative_error = rel;
      result.worst_tensor = name;
      result.worst_index = index;
      result.analytic = a;
      result.numeric = numeric;
    }
  });
  return result;
}

void SaveAdapterParams(const std::filesystem::path &path,
                       const AdapterParams &p) {
  nlohmann::json node;
  node["format"] = "slotforge.adapter_params.v1";
  node["tensors"]["w1"] = TensorJson(p.w1.data(), p.w1.size(),
                                     {p.w1.rows(), p.w1.cols()});
  node["tensors"]["b1"] = TensorJson(p.b1.data(), p.b1.size(), {p.b1.size()});
  node["tensors"]["w2"] = TensorJson(p.w2.data(), p.w2.size(),
                                     {p.w2.rows(), p.w2.cols()});
  node["tensors"]["b2"] = TensorJson(p.b2.data(), p.b2.size(), {p.b2.size()});
  WriteFileAtomic(path, node.dump() + "\n");
}

AdapterParams LoadAdapterParams(const std::filesystem::path &path) {
  nlohmann::json node;
  try {
    node = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kMalformedLine,
                path.string() + ": invalid JSON: " + e.what());
  }
  if (node.value("format", "") != "slotforge.adapter_params.v1") {
    throw Error(ErrorCode::kMalformedLine,
                path.string() + ": unknown parameter bundle format");
  }
  const nlohmann::json &tensors = node.at("tensors");
  AdapterParams p;
  std::vector<int64_t> shape;
  auto data = ReadTensor(tensors, "w1", 2, &shape);
  p.w1 = Eigen::Map<FrameMatrix>(data.data(), shape[0], shape[1]);
  data = ReadTensor(tensors, "b1", 1, &shape);
  p.b1 = Eigen::Map<Eigen::VectorXd>(data.data(), shape[0]);
  data = ReadTensor(tensors, "w2", 2, &shape);
  p.w2 = Eigen::Map<FrameMatrix>(data.data(), shape[0], shape[1]);
  data = ReadTensor(tensors, "b2", 1, &shape);
  p.b2 = Eigen::Map<Eigen::VectorXd>(data.data(), shape[0]);
  return p;
}

}  // namespace slotforge
