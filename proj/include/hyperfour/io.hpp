// Serialization and parsing helpers shared by the library and the CLI:
// the JSON coefficient schema, CSV emitters, grid specs, and deterministic
// number formatting (17 significant digits).
#ifndef HYPERFOUR_IO_HPP
#define HYPERFOUR_IO_HPP

#include <ostream>
#include <string>
#include <vector>

#include "hyperfour/fp.hpp"
#include "hyperfour/hfs.hpp"

namespace hyperfour {

// Fixed 17-significant-digit formatting: round-trips doubles and is
// byte-stable across runs.
std::string format_number(double v);
std::string format_complex_csv(cdouble v);  // "re,im"

// {"a0":[re,im],"a":{"1":[re,im],...},"b":{...},"sided":"one|two",
//  "skew":{"type":"none|power|exponential","beta":...,"omega1":...,"omega2":...}}
std::string hfs_to_json(const HfsCoefficients& c);
HfsCoefficients hfs_from_json(const std::string& text);

// Inclusive "start:stop:step" grid; the last point is clamped to stop when
// step does not divide the range within 1e-12.
std::vector<double> parse_grid(const std::string& spec);

// "0.3+0.8i", "2i", "-1.5", "0.5i" and friends.
cdouble parse_complex(const std::string& text);

// CSV rows "x,re_A_n,im_A_n,re_B_n,im_B_n" preceded by a metadata comment.
void write_coeff_csv_header(std::ostream& os, int n, double tol);
void write_coeff_csv_row(std::ostream& os, double x, cdouble an, cdouble bn);

// CSV rows "x,y,re_u,im_u".
void write_grid_csv_header(std::ostream& os);
void write_grid_csv_row(std::ostream& os, double x, double y, cdouble u);

}  // namespace hyperfour

#endif  // HYPERFOUR_IO_HPP
