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

#include "zsc/nn/kernels.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <vector>

namespace zsc::nn {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMat>;
using MutMap = Eigen::Map<RowMat>;
using ConstRowVec = Eigen::Map<const Eigen::RowVectorXd>;

// Index of input element (b, y, x, c).
inline std::size_t at(const ConvShape& s, int b, int y, int x, int c, int channels) {
  return ((static_cast<std::size_t>(b) * s.height + y) * s.width + x) * channels + c;
}

}  // namespace

namespace reference {

void conv2d_forward(const ConvShape& s, int batch, std::span<const double> input,
                    std::span<const double> weight, std::span<const double> bias,
                    std::span<double> output) {
  const int pad = s.kernel / 2;
  for (int b = 0; b < batch; ++b) {
    for (int y = 0; y < s.height; ++y) {
      for (int x = 0; x < s.width; ++x) {
        for (int co = 0; co < s.out_channels; ++co) {
          double sum = bias[static_cast<std::size_t>(co)];
          for (int ky = 0; ky < s.kernel; ++ky) {
            const int iy = y + ky - pad;
            if (iy < 0 || iy >= s.height) continue;
            for (int kx = 0; kx < s.kernel; ++kx) {
              const int ix = x + kx - pad;
              if (ix < 0 || ix >= s.width) continue;
              for (int ci = 0; ci < s.in_channels; ++ci) {
                const std::size_t wi =
                    (static_cast<std::size_t>((ky * s.kernel + kx) * s.in_channels + ci)) * s.out_channels + co;
                sum += input[at(s, b, iy, ix, ci, s.in_channels)] * weight[wi];
              }
            }
          }
          output[at(s, b, y, x, co, s.out_channels)] = sum;
        }
      }
    }
  }
}

void conv2d_backward(const ConvShape& s, int batch, std::span<const double> input,
                     std::span<const double> weight, std::span<const double> grad_output,
                     std::span<double> grad_input, std::span<double> grad_weight,
                     std::span<double> grad_bias) {
  const int pad = s.kernel / 2;
  for (int b = 0; b < batch; ++b) {
    for (int y = 0; y < s.height; ++y) {
      for (int x = 0; x < s.width; ++x) {
        for (int co = 0; co < s.out_channels; ++co) {
          const double g = grad_output[at(s, b, y, x, co, s.out_channels)];
          grad_bias[static_cast<std::size_t>(co)] += g;
          for (int ky = 0; ky < s.kernel; ++ky) {
            const int iy = y + ky - pad;
            if (iy < 0 || iy >= s.height) continue;
            for (int kx = 0; kx < s.kernel; ++kx) {
              const int ix = x + kx - pad;
              if (ix < 0 || ix >= s.width) continue;
              for (int ci = 0; ci < s.in_channels; ++ci) {
                const std::size_t wi =
                    (static_cast<std::size_t>((ky * s.kernel + kx) * s.in_channels + ci)) * s.out_channels + co;
                const std::size_t ii = at(s, b, iy, ix, ci, s.in_channels);
                grad_weight[wi] += input[ii] * g;
                if (!grad_input.empty()) grad_input[ii] += weight[wi] * g;
              }
            }
          }
        }
      }
    }
  }
}

void dense_forward(int batch, int in, int out, std::span<const double> input,
                   std::span<const double> weight, std::span<const double> bias,
                   std::span<double> output) {
  for (int b = 0; b < batch; ++b) {
    for (int o = 0; o < out; ++o) {
      double sum = bias[static_cast<std::size_t>(o)];
      for (int i = 0; i < in; ++i) {
        sum += input[static_cast<std::size_t>(b) * in + i] * weight[static_cast<std::size_t>(i) * out + o];
      }
      output[static_cast<std::size_t>(b) * out + o] = sum;
    }
  }
}

void dense_backward(int batch, int in, int out, std::span<const double> input,
                    std::span<const double> weight, std::span<const double> grad_output,
                    std::span<double> grad_input, std::span<double> grad_weight,
                    std::span<double> grad_bias) {
  for (int b = 0; b < batch; ++b) {
    for (int o = 0; o < out; ++o) {
      const double g = grad_output[static_cast<std::size_t>(b) * out + o];
      grad_bias[static_cast<std::size_t>(o)] += g;
      for (int i = 0; i < in; ++i) {
        grad_weight[static_cast<std::size_t>(i) * out + o] += input[static_cast<std::size_t>(b) * in + i] * g;
        if (!grad_input.empty()) {
          grad_input[static_cast<std::size_t>(b) * in + i] += weight[static_cast<std::size_t>(i) * out + o] * g;
        }
      }
    }
  }
}

}  // namespace reference

namespace parallel {

namespace {

// Row (b, y, x) of the patch matrix holds the zero-padded receptive field in
// (ky, kx, ci) order, matching the weight layout.
void im2col(const ConvShape& s, int batch, std::span<const double> input, std::span<double> cols) {
  const int pad = s.kernel / 2;
  const int k = s.patch_size();
#pragma omp parallel for schedule(static)
  for (int b = 0; b < batch; ++b) {
    for (int y = 0; y < s.height; ++y) {
      for (int x = 0; x < s.width; ++x) {
        double* row = cols.data() + (static_cast<std::size_t>(b) * s.positions() + y * s.width + x) * k;
        for (int ky = 0; ky < s.kernel; ++ky) {
          const int iy = y + ky - pad;
          for (int kx = 0; kx < s.kernel; ++kx) {
            const int ix = x + kx - pad;
            double* dst = row + (ky * s.kernel + kx) * s.in_channels;
            if (iy < 0 || iy >= s.height || ix < 0 || ix >= s.width) {
              std::fill(dst, dst + s.in_channels, 0.0);
            } else {
              const double* src = input.data() + at(s, b, iy, ix, 0, s.in_channels);
              std::copy(src, src + s.in_channels, dst);
            }
          }
        }
      }
    }
  }
}

void col2im_add(const ConvShape& s, int batch, std::span<const double> cols, std::span<double> grad_input) {
  const int pad = s.kernel / 2;
  const int k = s.patch_size();
#pragma omp parallel for schedule(static)
  for (int b = 0; b < batch; ++b) {
    for (int y = 0; y < s.height; ++y) {
      for (int x = 0; x < s.width; ++x) {
        const double* row = cols.data() + (static_cast<std::size_t>(b) * s.positions() + y * s.width + x) * k;
        for (int ky = 0; ky < s.kernel; ++ky) {
          const int iy = y + ky - pad;
          if (iy < 0 || iy >= s.height) continue;
          for (int kx = 0; kx < s.kernel; ++kx) {
            const int ix = x + kx - pad;
            if (ix < 0 || ix >= s.width) continue;
            const double* src = row + (ky * s.kernel + kx) * s.in_channels;
            double* dst = grad_input.data() + at(s, b, iy, ix, 0, s.in_channels);
            for (int ci = 0; ci < s.in_channels; ++ci) dst[ci] += src[ci];
          }
        }
      }
    }
  }
}

// grad_bias += column sums of g, row by row. Eigen's colwise().sum() on a
// mapped buffer picks its vector peeling from the address, so the same
// gradient summed from two allocations could differ in the last bit and two
// identical training runs drifted apart after a few updates.
void add_column_sums(const ConstMap& g, std::span<double> grad_bias) {
  for (Eigen::Index r = 0; r < g.rows(); ++r) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) grad_bias[static_cast<std::size_t>(j)] += g(r, j);
  }
}

thread_local std::vector<double> tl_cols;
thread_local std::vector<double> tl_dcols;

}  // namespace

void conv2d_forward(const ConvShape& s, int batch, std::span<const double> input,
                    std::span<const double> weight, std::span<const double> bias,
                    std::span<double> output) {
  const Eigen::Index rows = static_cast<Eigen::Index>(batch) * s.positions();
  const int k = s.patch_size();
  tl_cols.resize(static_cast<std::size_t>(rows) * k);
  im2col(s, batch, input, tl_cols);
  ConstMap cols(tl_cols.data(), rows, k);
  ConstMap w(weight.data(), k, s.out_channels);
  MutMap out(output.data(), rows, s.out_channels);
  out.noalias() = cols * w;
  out.rowwise() += ConstRowVec(bias.data(), s.out_channels);
}

void conv2d_backward(const ConvShape& s, int batch, std::span<const double> input,
                     std::span<const double> weight, std::span<const double> grad_output,
                     std::span<double> grad_input, std::span<double> grad_weight,
                     std::span<double> grad_bias) {
  const Eigen::Index rows = static_cast<Eigen::Index>(batch) * s.positions();
  const int k = s.patch_size();
  tl_cols.resize(static_cast<std::size_t>(rows) * k);
  im2col(s, batch, input, tl_cols);
  ConstMap cols(tl_cols.data(), rows, k);
  ConstMap g(grad_output.data(), rows, s.out_channels);
  MutMap gw(grad_weight.data(), k, s.out_channels);
  gw.noalias() += cols.transpose() * g;
  add_column_sums(g, grad_bias);
  if (!grad_input.empty()) {
    tl_dcols.resize(static_cast<std::size_t>(rows) * k);
    MutMap dcols(tl_dcols.data(), rows, k);
    ConstMap w(weight.data(), k, s.out_channels);
    dcols.noalias() = g * w.transpose();
    col2im_add(s, batch, tl_dcols, grad_input);
  }
}

void dense_forward(int batch, int in, int out, std::span<const double> input,
                   std::span<const double> weight, std::span<const double> bias,
                   std::span<double> output) {
  ConstMap x(input.data(), batch, in);
  ConstMap w(weight.data(), in, out);
  MutMap y(output.data(), batch, out);
  y.noalias() = x * w;
  y.rowwise() += ConstRowVec(bias.data(), out);
}

void dense_backward(int batch, int in, int out, std::span<const double> input,
                    std::span<const double> weight, std::span<const double> grad_output,
                    std::span<double> grad_input, std::span<double> grad_weight,
                    std::span<double> grad_bias) {
  ConstMap x(input.data(), batch, in);
  ConstMap g(grad_output.data(), batch, out);
  MutMap(grad_weight.data(), in, out).noalias() += x.transpose() * g;
  add_column_sums(g, grad_bias);
  if (!grad_input.empty()) {
    ConstMap w(weight.data(), in, out);
    MutMap(grad_input.data(), batch, in).noalias() += g * w.transpose();
  }
}

}  // namespace parallel

void leaky_relu_forward(std::span<const double> pre, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(pre.size());
#pragma omp parallel for schedule(static) if (n > 65536)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double v = pre[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = v > 0.0 ? v : kLeakySlope * v;
  }
}

void leaky_relu_backward(std::span<const double> pre, std::span<double> grad) {
  const auto n = static_cast<std::ptrdiff_t>(pre.size());
#pragma omp parallel for schedule(static) if (n > 65536)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (pre[static_cast<std::size_t>(i)] <= 0.0) grad[static_cast<std::size_t>(i)] *= kLeakySlope;
  }
}

}  // namespace zsc::nn
