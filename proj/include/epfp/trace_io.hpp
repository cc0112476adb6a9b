#pragma once

#include <filesystem>
#include <string>

#include "epfp/scheme.hpp"

namespace epfp {

/// CSV rendering with the pinned column order
///   n, x coords, u coords, y coords, alpha_n, beta_n, r_n,
///   res_x_Su, res_y_x, res_x_u, res_u_Su, dist_q
/// Floats are printed with 17 significant digits (lossless round trip);
/// dist_q is left empty when the problem has no known solution.
std::string trace_to_csv(const Trace& trace);

/// n plus the four residual series and dist_q.
std::string trace_to_plotdata_csv(const Trace& trace);

std::string compare_to_csv(const std::vector<CompareRow>& rows);

/// Serialize, then write via a temp file + rename so readers never observe a
/// partial file.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// "%.17g" rendering used for every float that reaches a CSV.
std::string format_float(double v);

}  // namespace epfp
