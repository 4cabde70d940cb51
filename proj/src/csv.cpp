#include "tcqsim/csv.hpp"

#include <sstream>

#include "tcqsim/config.hpp"

namespace tcqsim::csv {

void Writer::metadata(const std::string& key, const std::string& value) {
  out_ << "# " << key << ": " << value << "\n";
}

void Writer::metadata_block(const std::string& key, const std::string& text) {
  out_ << "# " << key << ":\n";
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out_ << "#   " << line << "\n";
}

void Writer::header(const std::vector<std::string>& columns) {
  row(columns);
}

void Writer::row(const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ",";
    out_ << fields[i];
  }
  out_ << "\n";
}

std::string field(double v) { return config::format_double(v); }

std::string field(int v) { return std::to_string(v); }

std::string field(bool v) { return v ? "true" : "false"; }

std::string field(const std::string& v) {
  const bool needs_quotes =
      v.find_first_of(",\"\n\r") != std::string::npos || v.empty();
  if (!needs_quotes) return v;
  std::string quoted = "\"";
  for (char c : v) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace tcqsim::csv
