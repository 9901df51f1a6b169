#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aontrace {

// Every failure the library reports carries one of these kinds so callers
// (and the CLI error object) can dispatch without parsing messages.
enum class ErrorKind {
  Io,                // file missing / unreadable
  Syntax,            // malformed file text, message carries line/position
  Schema,            // missing/duplicate ids, dangling refs, bad values, unknown fields
  Unit,              // unsupported unit strings
  Domain,            // nonpositive tech quantities
  UnknownLayer,      // segment layer not in tech file
  MultiTapComponent, // two taps share a connected component
  OrphanPin,         // pin unreachable from any tap
  CyclicTopology,    // component contains a cycle
  NotATree,          // traced component is not a tree
  TapUnreachable,    // backward search exhausted without hitting the tap
  SingularSystem,    // conductance matrix not solvable
  NumericalError,    // non-finite solve results or residual blowup
  InfeasibleParams,  // generator parameters cannot be satisfied
  EmptyReference,    // comparison accuracy undefined for empty reference set
  Internal,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace aontrace
