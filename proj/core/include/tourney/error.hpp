#pragma once

#include <stdexcept>
#include <string>

namespace tourney {

enum class Errc {
  missing_pair,
  duplicate_pair,
  self_loop,
  vertex_out_of_range,
  even_part_size,
  size_mismatch,
  too_few_colors,
  degree_mismatch,
  bad_parameter,
  parse_error,
  not_symmetric,
  not_isomorphic,
  oracle_inconsistent,
  witness_check_failed,
  round_cap_exceeded,
  certificate_invalid,
  oracle_io,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace tourney
