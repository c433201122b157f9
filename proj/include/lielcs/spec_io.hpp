#pragma once

#include <string>

#include "lielcs/larc.hpp"

namespace lielcs {

/// On-disk system description (JSON): the tuple (xi, A, a, alpha, eta,
/// beta, omega). A is either {"p": .., "q": ..} or a 2x2 row-major matrix
/// that must commute with J. Angles are radians, omega is [u-, u+].
struct SystemSpec {
  ControlSystem system;

  /// Parse failures throw Errc::invalid_spec naming the offending field.
  static SystemSpec from_json_text(const std::string& text);
  static SystemSpec load(const std::string& path);

  std::string to_json_text() const;
  void save(const std::string& path) const;
};

}  // namespace lielcs
