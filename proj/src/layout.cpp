#include "pretty/layout.hpp"

#include <stdexcept>

namespace pretty {

Layout Layout::from_lines(std::vector<std::string> lines) {
  if (lines.empty()) throw std::invalid_argument("a layout has at least one line");
  Layout out;
  out.indents.assign(lines.size(), 0);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (lines[k].find('\n') != std::string::npos) {
      throw std::invalid_argument("layout lines must not contain newlines");
    }
    if (k > 0) {
      auto first = lines[k].find_first_not_of(' ');
      out.indents[k] = first == std::string::npos ? lines[k].size() : first;
    }
  }
  out.lines = std::move(lines);
  return out;
}

std::string Layout::str() const {
  std::string out;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (k) out += '\n';
    out += lines[k];
  }
  return out;
}

}  // namespace pretty
