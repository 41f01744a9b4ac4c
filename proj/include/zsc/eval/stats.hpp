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
#include <string_view>
#include <vector>

namespace zsc::eval {

enum class Difficulty { VeryEasy, Easy, Medium, Hard, VeryHard };
inline constexpr int kNumDifficulties = 5;

std::string_view difficulty_name(Difficulty d);

// Label for one reward given the mean and standard deviation. Upper bounds
// are inclusive, so r == mu + 1.5 sigma is Easy.
Difficulty difficulty_of(double r, double mu, double sigma);

// Labels every reward against the sample mean and sample (n-1) standard
// deviation of the set. Throws zsc::Error for fewer than two values or a
// non-finite value.
std::vector<Difficulty> classify_difficulty(std::span<const double> rewards);

double mean(std::span<const double> v);
double sample_stddev(std::span<const double> v);  // 0 for fewer than 2 values

// Rescales a slice so its minimum maps to 0 and maximum to 1. A constant
// slice maps to all zeros.
std::vector<double> normalize_slice(std::span<const double> values);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

// Two-sided tail probability P(|T| >= |t|) for Student's t with df degrees
// of freedom.
double student_t_two_sided(double t, double df);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  int df = 0;
  // Set when the differences have zero variance: t is 0 (all equal to zero)
  // or +-infinity, and p is 1 or 0 respectively.
  bool degenerate = false;
};

// Paired t-test on a - b. Throws zsc::Error for unequal lengths, n < 2 or
// non-finite input.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace zsc::eval
