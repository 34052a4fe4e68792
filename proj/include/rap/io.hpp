#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "rap/characters.hpp"
#include "rap/game.hpp"
#include "rap/polytope.hpp"

namespace rap {

// Data-format version embedded in every file and in `rap --version`.
inline constexpr int kFormatVersion = 1;

// Structured text object formats.  Indices are 0-based, colours 1-based, and
// rationals appear as ["num", "den"] pairs of decimal strings, so every file
// is exact, human-diffable and language-neutral.  Readers check the format
// tag and version and throw std::invalid_argument with the offending detail
// on any malformed input; they validate shape only — semantic validation
// stays with validate_polytope / validate_colouring.

std::string write_polytope(const Polytope& P);
Polytope read_polytope(const std::string& text);

std::string write_colouring(const Colouring& lam);
Colouring read_colouring(const std::string& text);

std::string write_state(const State& s);
State read_state(const std::string& text);

std::string write_moves(const Moves& mv);
Moves read_moves(const std::string& text);

std::string write_gram(const std::vector<std::vector<mpq_class>>& G);
std::vector<std::vector<mpq_class>> read_gram(const std::string& text);

std::string write_character(const Character& chi);
Character read_character(const std::string& text);

// Whole-file helpers used by the batch front-end.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace rap
