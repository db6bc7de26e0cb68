#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rg {

inline constexpr const char* kSchema = "rg-dwpf/1";

/// Bad flags, malformed numbers, complex input in exact mode.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a run needs. Number fields hold canonical text: reduced
/// fractions "p/q" (or integers), complex values as "a+bi".
struct JobSpec {
  std::string command;  // pf | verify | gamma | bethe | coeffs
  std::string mode = "exact";
  std::optional<int> two_s;
  std::vector<std::string> eps;
  std::vector<std::string> nu;
  std::string method = "det";  // pf: perm | det | both
  std::string suite;           // verify
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::size_t trials = 20;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::optional<std::string> z;  // gamma
  std::optional<int> order;
  std::optional<std::string> g;  // bethe
  std::vector<int> occupation;
  std::vector<std::string> lambdas;
  std::vector<std::string> Lambda;
  std::string format = "json";  // verify: json | csv
  std::string out;

  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

/// Parses arguments (without the program name). Throws UsageError.
JobSpec parse_job(const std::vector<std::string>& args);

/// Canonical argument list; parse_job(serialize(j)) == j for parsed jobs.
std::vector<std::string> serialize(const JobSpec& job);

/// Canonical number text; rejects complex literals when `exact`.
std::string canonical_number(const std::string& text, bool exact);

/// Runs one command, writing the JSON (or CSV) document to `out` unless the
/// job names an output file. Exit codes: 0 ok, 1 usage or domain error,
/// 2 a check failed, 3 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rg
