#pragma once

#include <iosfwd>
#include <string>

#include "invscheme/schemes.hpp"
#include "invscheme/stencil.hpp"

namespace invscheme {

/// 17 significant digits, lowercase scientific ("%.16e"); round-trips doubles.
std::string format_real(double v);

/// CSV with header `n,x,u`, one row per node.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);
Trajectory read_trajectory_csv(std::istream& is);

/// CSV with header `n,t,y`.
void write_winternitz_csv(std::ostream& os, const WinternitzPair& ty);
WinternitzPair read_winternitz_csv(std::istream& is);

void save_trajectory_csv(const std::string& path, const Trajectory& tr);
Trajectory load_trajectory_csv(const std::string& path);
void save_winternitz_csv(const std::string& path, const WinternitzPair& ty);
WinternitzPair load_winternitz_csv(const std::string& path);

}  // namespace invscheme
