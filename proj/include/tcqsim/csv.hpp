#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tcqsim::csv {

/// RFC-4180-style CSV with `#`-prefixed metadata comment lines before the
/// header.  All numeric formatting is locale-independent; lines end in LF.
class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void metadata(const std::string& key, const std::string& value);
  /// Multi-line metadata (each line prefixed) for config echoes.
  void metadata_block(const std::string& key, const std::string& text);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

std::string field(double v);
std::string field(int v);
std::string field(bool v);
std::string field(const std::string& v);  // quotes when needed

}  // namespace tcqsim::csv
