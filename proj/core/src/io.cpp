#include "schroeder_tails/io.hpp"

#include <cmath>
#include <cstdio>

namespace schroeder_tails {

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_coefficient_table_csv(std::ostream& out, const CoefficientTable& table) {
  out << "n,p_tn\n";
  for (std::size_t n = 0; n < table.coeffs.size(); ++n)
    out << n << ',' << csv_number(table.coeffs[n]) << '\n';
}

void write_density_csv(std::ostream& out, const DensityGrid& grid) {
  out << "x,p\n";
  for (std::size_t i = 0; i < grid.xs.size(); ++i)
    out << csv_number(grid.xs[i]) << ',' << csv_number(grid.ps[i]) << '\n';
}

void write_compare_csv(std::ostream& out, const CompareTable& table) {
  out << "x,p_iter,p_fourier,p_asym,ratio\n";
  for (const CompareRow& row : table.rows) {
    out << csv_number(row.x) << ',' << csv_number(row.p_iteration) << ',';
    if (std::isnan(row.p_fourier))
      out << "";
    else
      out << csv_number(row.p_fourier);
    out << ',' << csv_number(row.p_asymptotic) << ',' << csv_number(row.ratio) << '\n';
  }
}

}  // namespace schroeder_tails
