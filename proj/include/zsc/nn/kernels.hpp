// Copyright 2026 The ZSC Curriculum Authors
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

#include <span>

// Dense and convolution kernels over row-major double buffers.
//
// Layouts:
//   conv input/output   batch x height x width x channels (channel fastest)
//   conv weight         kernel x kernel x in_channels x out_channels
//   dense input/output  batch x features
//   dense weight        in_features x out_features
//
// Convolutions use stride 1 and "same" zero padding (odd kernels only).
//
// Two interchangeable implementations are provided: `reference` is plain
// nested loops, `parallel` lowers convolutions to im2col + GEMM and splits
// per-sample work across OpenMP threads. Backward kernels accumulate into
// the gradient buffers; grad_input may be empty to skip it.

namespace zsc::nn {

struct ConvShape {
  int height = 0;
  int width = 0;
  int in_channels = 0;
  int out_channels = 0;
  int kernel = 1;

  int positions() const { return height * width; }
  int patch_size() const { return kernel * kernel * in_channels; }
  int weight_count() const { return patch_size() * out_channels; }
};

enum class Backend { Reference, Parallel };

namespace reference {

void conv2d_forward(const ConvShape& s, int batch, std::span<const double> input,
                    std::span<const double> weight, std::span<const double> bias,
                    std::span<double> output);
void conv2d_backward(const ConvShape& s, int batch, std::span<const double> input,
                     std::span<const double> weight, std::span<const double> grad_output,
                     std::span<double> grad_input, std::span<double> grad_weight,
                     std::span<double> grad_bias);
void dense_forward(int batch, int in, int out, std::span<const double> input,
                   std::span<const double> weight, std::span<const double> bias,
                   std::span<double> output);
void dense_backward(int batch, int in, int out, std::span<const double> input,
                    std::span<const double> weight, std::span<const double> grad_output,
                    std::span<double> grad_input, std::span<double> grad_weight,
                    std::span<double> grad_bias);

}  // namespace reference

namespace parallel {

void conv2d_forward(const ConvShape& s, int batch, std::span<const double> input,
                    std::span<const double> weight, std::span<const double> bias,
                    std::span<double> output);
void conv2d_backward(const ConvShape& s, int batch, std::span<const double> input,
                     std::span<const double> weight, std::span<const double> grad_output,
                     std::span<double> grad_input, std::span<double> grad_weight,
                     std::span<double> grad_bias);
void dense_forward(int batch, int in, int out, std::span<const double> input,
                   std::span<const double> weight, std::span<const double> bias,
                   std::span<double> output);
void dense_backward(int batch, int in, int out, std::span<const double> input,
                    std::span<const double> weight, std::span<const double> grad_output,
                    std::span<double> grad_input, std::span<double> grad_weight,
                    std::span<double> grad_bias);

}  // namespace parallel

inline constexpr double kLeakySlope = 0.01;

void leaky_relu_forward(std::span<const double> pre, std::span<double> out);
// grad *= leaky'(pre), in place.
void leaky_relu_backward(std::span<const double> pre, std::span<double> grad);

}  // namespace zsc::nn
