#pragma once

// Reference values for the reproduction tables. Cells are
// bias (MSE) pairs; rows follow the order of builtin_family().

#include <array>
#include <optional>

namespace selbias::reference {

struct Pair {
  double bias;
  double mse;
};

// traditional, shrink, nb1, nb2, nb2s, pb1, pb2, pb2s, jk
using NineColumns = std::array<Pair, 9>;

inline constexpr std::array<const char*, 9> kMainColumns = {
    "traditional", "shrink", "nb1", "nb2", "nb2s", "pb1", "pb2", "pb2s", "jk"};

// Marginal bias and MSE, three arms: S1, S2 (by theta), S3, S4 (by w).
inline constexpr std::array<NineColumns, 16> kMarginal = {{
    {{{0.67, 0.80}, {0.18, 0.35}, {0.41, 0.65}, {0.07, 0.83}, {0.14, 0.33}, {0.40, 0.65}, {0.06, 0.83}, {0.14, 0.33}, {0.35, 1.15}}},
    {{{0.54, 0.64}, {0.05, 0.32}, {0.27, 0.55}, {-0.06, 0.83}, {0.01, 0.31}, {0.27, 0.55}, {-0.07, 0.84}, {0.01, 0.31}, {0.22, 1.07}}},
    {{{0.58, 0.69}, {0.09, 0.32}, {0.32, 0.58}, {-0.02, 0.83}, {0.05, 0.31}, {0.31, 0.58}, {-0.03, 0.84}, {0.05, 0.31}, {0.27, 1.09}}},
    {{{0.60, 0.72}, {0.11, 0.33}, {0.33, 0.60}, {0.00, 0.84}, {0.07, 0.32}, {0.33, 0.60}, {-0.01, 0.85}, {0.07, 0.31}, {0.27, 1.14}}},
    {{{0.55, 0.55}, {0.26, 0.32}, {0.33, 0.44}, {0.05, 0.57}, {0.18, 0.29}, {0.32, 0.44}, {0.05, 0.58}, {0.18, 0.29}, {0.28, 0.80}}},
    {{{0.42, 0.45}, {0.13, 0.30}, {0.21, 0.41}, {-0.06, 0.62}, {0.05, 0.28}, {0.20, 0.41}, {-0.07, 0.62}, {0.05, 0.29}, {0.17, 0.76}}},
    {{{0.46, 0.49}, {0.17, 0.31}, {0.25, 0.43}, {-0.02, 0.62}, {0.09, 0.29}, {0.24, 0.43}, {-0.03, 0.62}, {0.09, 0.29}, {0.20, 0.78}}},
    {{{0.49, 0.51}, {0.20, 0.32}, {0.27, 0.44}, {0.00, 0.62}, {0.12, 0.30}, {0.27, 0.44}, {-0.01, 0.63}, {0.11, 0.30}, {0.21, 0.83}}},
    {{{0.52, 0.56}, {0.07, 0.27}, {0.27, 0.48}, {-0.03, 0.68}, {0.03, 0.26}, {0.27, 0.48}, {-0.04, 0.69}, {0.03, 0.26}, {0.22, 0.91}}},
    {{{0.46, 0.45}, {0.05, 0.22}, {0.24, 0.39}, {-0.04, 0.57}, {0.02, 0.21}, {0.23, 0.39}, {-0.05, 0.57}, {0.02, 0.21}, {0.19, 0.73}}},
    {{{0.43, 0.40}, {0.06, 0.20}, {0.22, 0.35}, {-0.03, 0.49}, {0.02, 0.19}, {0.22, 0.34}, {-0.04, 0.49}, {0.02, 0.19}, {0.19, 0.62}}},
    {{{0.39, 0.39}, {0.07, 0.21}, {0.21, 0.33}, {-0.02, 0.45}, {0.02, 0.20}, {0.20, 0.32}, {-0.03, 0.44}, {0.02, 0.20}, {0.16, 0.51}}},
    {{{0.51, 0.54}, {0.06, 0.26}, {0.26, 0.46}, {-0.04, 0.68}, {0.03, 0.25}, {0.26, 0.46}, {-0.05, 0.68}, {0.03, 0.25}, {0.21, 0.90}}},
    {{{0.45, 0.45}, {0.05, 0.22}, {0.23, 0.38}, {-0.04, 0.56}, {0.01, 0.21}, {0.23, 0.38}, {-0.05, 0.57}, {0.01, 0.21}, {0.19, 0.74}}},
    {{{0.41, 0.37}, {0.04, 0.18}, {0.21, 0.32}, {-0.05, 0.48}, {0.01, 0.17}, {0.20, 0.32}, {-0.06, 0.49}, {0.01, 0.17}, {0.16, 0.64}}},
    {{{0.38, 0.32}, {0.03, 0.16}, {0.19, 0.27}, {-0.05, 0.41}, {0.00, 0.15}, {0.18, 0.27}, {-0.05, 0.41}, {0.00, 0.15}, {0.15, 0.54}}},
}};

// Conditional on the third group being selected.
inline constexpr std::array<NineColumns, 16> kConditional = {{
    {{{0.68, 0.81}, {0.19, 0.35}, {0.41, 0.65}, {0.07, 0.82}, {0.15, 0.33}, {0.41, 0.65}, {0.07, 0.84}, {0.15, 0.33}, {0.36, 1.13}}},
    {{{0.58, 0.69}, {0.08, 0.34}, {0.33, 0.60}, {0.02, 0.84}, {0.03, 0.33}, {0.32, 0.60}, {0.01, 0.84}, {0.03, 0.34}, {0.29, 1.07}}},
    {{{0.62, 0.74}, {0.12, 0.34}, {0.36, 0.62}, {0.05, 0.84}, {0.07, 0.33}, {0.36, 0.62}, {0.04, 0.85}, {0.07, 0.33}, {0.32, 1.10}}},
    {{{0.63, 0.76}, {0.14, 0.34}, {0.37, 0.63}, {0.05, 0.85}, {0.09, 0.32}, {0.37, 0.63}, {0.04, 0.87}, {0.09, 0.32}, {0.31, 1.15}}},
    {{{0.71, 0.81}, {0.42, 0.49}, {0.50, 0.67}, {0.23, 0.77}, {0.34, 0.44}, {0.49, 0.67}, {0.22, 0.78}, {0.34, 0.44}, {0.44, 1.08}}},
    {{{0.59, 0.66}, {0.30, 0.42}, {0.40, 0.59}, {0.16, 0.74}, {0.22, 0.39}, {0.39, 0.59}, {0.15, 0.74}, {0.22, 0.40}, {0.37, 0.93}}},
    {{{0.64, 0.71}, {0.34, 0.44}, {0.43, 0.61}, {0.19, 0.75}, {0.26, 0.40}, {0.43, 0.61}, {0.19, 0.74}, {0.26, 0.41}, {0.42, 0.92}}},
    {{{0.65, 0.72}, {0.35, 0.45}, {0.44, 0.61}, {0.18, 0.75}, {0.27, 0.40}, {0.43, 0.62}, {0.17, 0.75}, {0.27, 0.40}, {0.39, 1.00}}},
    {{{0.55, 0.61}, {0.10, 0.29}, {0.32, 0.52}, {0.03, 0.70}, {0.06, 0.28}, {0.31, 0.52}, {0.02, 0.72}, {0.06, 0.28}, {0.28, 0.92}}},
    {{{0.48, 0.48}, {0.07, 0.23}, {0.27, 0.41}, {0.02, 0.57}, {0.03, 0.22}, {0.27, 0.41}, {0.01, 0.56}, {0.04, 0.23}, {0.25, 0.72}}},
    {{{0.45, 0.43}, {0.08, 0.22}, {0.26, 0.37}, {0.02, 0.51}, {0.04, 0.21}, {0.25, 0.37}, {0.01, 0.50}, {0.04, 0.21}, {0.23, 0.62}}},
    {{{0.41, 0.40}, {0.11, 0.24}, {0.24, 0.34}, {0.04, 0.45}, {0.06, 0.22}, {0.24, 0.34}, {0.03, 0.44}, {0.06, 0.22}, {0.21, 0.51}}},
    {{{0.55, 0.59}, {0.10, 0.27}, {0.31, 0.50}, {0.03, 0.69}, {0.06, 0.26}, {0.31, 0.50}, {0.02, 0.69}, {0.06, 0.26}, {0.28, 0.92}}},
    {{{0.49, 0.49}, {0.08, 0.23}, {0.28, 0.41}, {0.03, 0.57}, {0.04, 0.23}, {0.28, 0.42}, {0.02, 0.57}, {0.04, 0.23}, {0.25, 0.74}}},
    {{{0.44, 0.40}, {0.06, 0.19}, {0.25, 0.35}, {0.01, 0.48}, {0.02, 0.18}, {0.25, 0.34}, {0.00, 0.49}, {0.02, 0.18}, {0.22, 0.63}}},
    {{{0.40, 0.34}, {0.04, 0.17}, {0.22, 0.30}, {0.00, 0.42}, {0.01, 0.16}, {0.21, 0.30}, {-0.01, 0.43}, {0.01, 0.16}, {0.18, 0.56}}},
}};

inline constexpr std::array<NineColumns, 4> kFourArm = {{
    {{{0.67, 0.80}, {0.19, 0.30}, {0.48, 0.69}, {0.07, 0.86}, {0.13, 0.27}, {0.48, 0.69}, {0.06, 0.87}, {0.13, 0.26}, {0.41, 1.30}}},
    {{{0.47, 0.57}, {0.05, 0.27}, {0.34, 0.58}, {-0.07, 0.87}, {-0.02, 0.25}, {0.34, 0.58}, {-0.08, 0.88}, {-0.02, 0.26}, {0.26, 1.22}}},
    {{{0.53, 0.63}, {0.09, 0.28}, {0.39, 0.61}, {-0.02, 0.85}, {0.02, 0.26}, {0.38, 0.61}, {-0.03, 0.86}, {0.02, 0.26}, {0.32, 1.23}}},
    {{{0.57, 0.68}, {0.12, 0.29}, {0.42, 0.64}, {0.01, 0.85}, {0.05, 0.26}, {0.41, 0.64}, {0.00, 0.86}, {0.05, 0.26}, {0.36, 1.24}}},
}};

// Bootstrap order table, S1 thetas x B in {80, 100, 500, 1000}.
// Columns pb1, pb2, pb3, nb1, nb2, nb3; triple cells exist for B <= 100 only.
inline constexpr std::array<const char*, 6> kOrderColumns = {"pb1", "pb2", "pb3", "nb1", "nb2", "nb3"};
inline constexpr std::array<unsigned, 4> kOrderB = {80, 100, 500, 1000};
inline constexpr Pair kBlank = {0.0, -1.0};  // mse < 0 marks a blank cell

inline constexpr std::array<std::array<std::array<Pair, 6>, 4>, 4> kBootOrder = {{
    {{
        {{{0.40, 0.65}, {0.06, 0.83}, {-0.37, 1.97}, {0.40, 0.65}, {0.07, 0.83}, {-0.36, 1.94}}},
        {{{0.39, 0.63}, {0.05, 0.82}, {-0.39, 1.95}, {0.40, 0.63}, {0.06, 0.82}, {-0.38, 1.92}}},
        {{{0.41, 0.64}, {0.07, 0.81}, kBlank, {0.41, 0.65}, {0.08, 0.81}, kBlank}},
        {{{0.38, 0.62}, {0.04, 0.80}, kBlank, {0.39, 0.63}, {0.05, 0.80}, kBlank}},
    }},
    {{
        {{{0.28, 0.57}, {-0.06, 0.84}, {-0.49, 2.08}, {0.28, 0.57}, {-0.05, 0.84}, {-0.47, 2.04}}},
        {{{0.27, 0.55}, {-0.07, 0.83}, {-0.51, 2.07}, {0.27, 0.56}, {-0.06, 0.82}, {-0.49, 2.03}}},
        {{{0.28, 0.56}, {-0.06, 0.82}, kBlank, {0.28, 0.57}, {-0.05, 0.81}, kBlank}},
        {{{0.26, 0.55}, {-0.08, 0.82}, kBlank, {0.27, 0.55}, {-0.07, 0.81}, kBlank}},
    }},
    {{
        {{{0.31, 0.59}, {-0.03, 0.84}, {-0.46, 2.06}, {0.31, 0.59}, {-0.02, 0.84}, {-0.45, 2.03}}},
        {{{0.30, 0.57}, {-0.04, 0.82}, {-0.48, 2.03}, {0.30, 0.57}, {-0.04, 0.82}, {-0.47, 2.00}}},
        {{{0.31, 0.58}, {-0.03, 0.81}, kBlank, {0.32, 0.58}, {-0.02, 0.81}, kBlank}},
        {{{0.29, 0.57}, {-0.05, 0.82}, kBlank, {0.30, 0.57}, {-0.04, 0.81}, kBlank}},
    }},
    {{
        {{{0.34, 0.61}, {0.00, 0.85}, {-0.43, 2.04}, {0.35, 0.61}, {0.02, 0.84}, {-0.42, 2.01}}},
        {{{0.33, 0.59}, {0.00, 0.82}, {-0.44, 2.01}, {0.34, 0.60}, {0.00, 0.82}, {-0.43, 1.97}}},
        {{{0.35, 0.61}, {0.01, 0.82}, kBlank, {0.35, 0.61}, {0.02, 0.81}, kBlank}},
        {{{0.33, 0.59}, {-0.01, 0.82}, kBlank, {0.33, 0.59}, {0.00, 0.81}, kBlank}},
    }},
}};

// Toy table: n, E(theta_hat), bias, P(select group 2).
struct ToyRow {
  long n;
  double expectation;
  double bias;
  double p_select;
};
inline constexpr std::array<ToyRow, 3> kToy = {{{40, 1.40, 0.40, 0.53},
                                                 {4000, 1.01, 0.01, 0.82},
                                                 {40000, 1.00, 0.00, 1.00}}};

// AWARD-5 Stage 1 estimates and reported laptop runtimes (seconds).
struct Award5Row {
  const char* method;
  double value;
  double seconds;  // < 0 when not reported
};
inline constexpr std::array<Award5Row, 4> kAward5 = {{{"traditional", 1.33, -1.0},
                                                      {"pb1", 1.28, 0.04},
                                                      {"pb2", 1.20, 23.1},
                                                      {"pb2s", 1.16, 23.1}}};

}  // namespace selbias::reference
