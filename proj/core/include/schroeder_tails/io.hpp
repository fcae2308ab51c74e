#pragma once

#include <ostream>
#include <string>

#include "schroeder_tails/density.hpp"
#include "schroeder_tails/offspring.hpp"

namespace schroeder_tails {

inline constexpr const char* kVersion = "0.1.0";

/// Fixed numeric CSV formatting (12 significant digits, C locale).
std::string csv_number(double v);

/// Header `n,p_tn`, one row per coefficient.
void write_coefficient_table_csv(std::ostream& out, const CoefficientTable& table);

/// Header `x,p`.
void write_density_csv(std::ostream& out, const DensityGrid& grid);

/// Header `x,p_iter,p_fourier,p_asym,ratio`.
void write_compare_csv(std::ostream& out, const CompareTable& table);

}  // namespace schroeder_tails
