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

// Published comparison rows used as fixed reference data.

#ifndef SLOTFORGE_TESTS_SUPPORT_TABLE_ROWS_H_
#define SLOTFORGE_TESTS_SUPPORT_TABLE_ROWS_H_

#include <array>

namespace slotforge::testing {

struct PublishedRow {
  const char *label;
  double base_p, base_r, base_f1;
  double new_p, new_r, new_f1;
  double delta_f1;
};

inline constexpr std::array<PublishedRow, 11> kPublishedRows = {{
    {"Llama 3.2 3B Instruct", 0.6292, 0.8726, 0.7312, 0.6431, 0.9319, 0.7610, 4.08},
    {"Llama 3.2 3B Base", 0.5596, 0.9073, 0.6923, 0.6691, 0.9168, 0.7736, 11.74},
    {"Llama 3.2 1B", 0.5571, 0.8541, 0.6743, 0.5580, 0.9156, 0.6934, 2.83},
    {"Deepseek R1 Distill", 0.4296, 0.8257, 0.5652, 0.5616, 0.9065, 0.6936, 22.72},
    {"Phi4 mini", 0.5359, 0.8685, 0.6628, 0.4957, 0.8431, 0.6243, -5.81},
    {"Qwen3 4B", 0.6308, 0.9400, 0.7550, 0.4979, 0.8717, 0.6338, -16.05},
    {"Qwen3 0.6B", 0.5176, 0.8633, 0.6472, 0.4889, 0.7935, 0.6050, -6.52},
    {"Qwen3 0.6B hybrid regular", 0.5176, 0.8633, 0.6472, 0.5600, 0.8721, 0.6821, 5.39},
    {"Qwen3 0.6B hybrid reasoning", 0.4889, 0.7935, 0.6050, 0.5797, 0.8700, 0.6958, 15.01},
    {"Qwen3 4B hybrid regular", 0.6308, 0.9400, 0.7550, 0.6821, 0.9340, 0.7884, 4.42},
    {"Qwen3 4B hybrid reasoning", 0.4979, 0.8717, 0.6338, 0.6958, 0.9377, 0.7988, 26.03},
}};

}  // namespace slotforge::testing

#endif  // SLOTFORGE_TESTS_SUPPORT_TABLE_ROWS_H_
