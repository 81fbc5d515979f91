// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "gdapep/gda.hpp"
#include "gdapep/oracles.hpp"

namespace gdapep {

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

// Instance files are JSON objects {"A": [[..]], "B": [[..]], "C": [[..]]}
// with row-major numeric matrices.  Malformed JSON or wrong shapes raise
// ParseError; the matrix requirements themselves (symmetry, dimensions)
// are checked by the QuadraticSaddle constructor.
QuadraticSaddle parse_instance_json(const std::string& text);
QuadraticSaddle load_instance_json(const std::string& path);
std::string instance_to_json(const QuadraticSaddle& inst);
void save_instance_json(const QuadraticSaddle& inst, const std::string& path);

// CSV with header k,dist_sq,ratio; the ratio column is empty on the first
// row and dist_sq[k]/dist_sq[k-1] afterwards.
std::string trajectory_csv(const Trajectory& traj);

}  // namespace gdapep
