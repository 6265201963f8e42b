#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "pretty/errors.hpp"
#include "pretty/formatters.hpp"

namespace pretty {

namespace {

using Json = nlohmann::ordered_json;

Json parse_json(std::string_view src) {
  try {
    return Json::parse(src.begin(), src.end());
  } catch (const Json::parse_error& e) {
    // e.byte is 1-based and points at the offending character
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, src.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (src[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (auto p = what.rfind(": "); p != std::string::npos) what = what.substr(p + 2);
    throw ParseError(what, line, col);
  }
}

std::string scalar(const Json& j) { return j.dump(-1, ' ', false, Json::error_handler_t::replace); }

class Builder {
 public:
  explicit Builder(const StyleConfig& style) : style_(style), break_(newline(std::string())) {}

  Doc build(const Json& j) {
    if (j.is_object()) {
      if (j.empty()) return text("{}");
      std::vector<Doc> members;
      for (const auto& [key, value] : j.items()) {
        members.push_back(concat(text(scalar(Json(key)) + ": "), build(value)));
      }
      return container("{", members, "}");
    }
    if (j.is_array()) {
      if (j.empty()) return text("[]");
      std::vector<Doc> items;
      for (const auto& value : j) items.push_back(build(value));
      return container("[", items, "]");
    }
    return text(scalar(j));
  }

 private:
  Doc container(const char* open, const std::vector<Doc>& items, const char* close) {
    Doc body = items.front();
    for (std::size_t k = 1; k < items.size(); ++k) body = concat(concat(body, text(",")), concat(nl(), items[k]));
    Doc vertical = concat(concat(text(open), nest(style_.indent_width, concat(break_, body))),
                          concat(break_, text(close)));
    return group(vertical);
  }

  const StyleConfig& style_;
  Doc break_;
};

void one_line(const Json& j, std::string& out) {
  if (j.is_object()) {
    out += '{';
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ", ";
      first = false;
      out += scalar(Json(key));
      out += ": ";
      one_line(value, out);
    }
    out += '}';
  } else if (j.is_array()) {
    out += '[';
    bool first = true;
    for (const auto& value : j) {
      if (!first) out += ", ";
      first = false;
      one_line(value, out);
    }
    out += ']';
  } else {
    out += scalar(j);
  }
}

}  // namespace

Doc json_to_doc(std::string_view json, const StyleConfig& style) {
  const Json j = parse_json(json);
  return Builder(style).build(j);
}

std::string json_one_line(std::string_view json) {
  std::string out;
  one_line(parse_json(json), out);
  return out;
}

}  // namespace pretty
