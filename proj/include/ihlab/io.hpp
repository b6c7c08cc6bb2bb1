#pragma once

// Model files, reports and their plain-text diamonds.

#include <cstdint>
#include <optional>
#include <string>

#include "ihlab/model.hpp"

namespace ihlab {

struct ModelFile {
  GradedAlgebraModel model;
  /// The model came from the builder (full_algebra absent, or tagged
  /// "construction": "sh" by build-sh).
  bool builder_output = false;
  /// SHA-256 of the file bytes, hex.
  std::string digest;
};

/// Parses the model JSON format.  Without `full_algebra` the H^2-generated
/// algebra of the lattice is built.  Throws InputError on malformed input.
ModelFile parse_model(const std::string& text, std::uint64_t seed = 42);
ModelFile load_model(const std::string& path, std::uint64_t seed = 42);

/// JSON text of a model, including `full_algebra`.
std::string model_to_json(const GradedAlgebraModel& model, bool builder_output);

std::string sha256_hex(const std::string& bytes);

std::string read_file(const std::string& path);

/// Writes via a temporary file in the same directory and a rename.
void write_file_atomic(const std::string& path, const std::string& contents);

/// Diamond layout of a (2n+1) x (2n+1) table, top degree first.
std::string render_diamond(const NumberTable& table, const std::string& title);

std::string format_vector(const RationalVector& v);

/// Comma-separated rationals.  Throws InputError.
RationalVector parse_class(const std::string& csv);

}  // namespace ihlab
