#include <stdexcept>
#include <string>
#include <vector>

#include "pretty/resolver.hpp"

namespace pretty {

namespace {

Layout render_doc(const Doc& root) {
  Layout out;
  struct Frame {
    const detail::DocNode* node;
    std::size_t indent;
  };
  std::vector<Frame> stack{{root.node(), 0}};
  while (!stack.empty()) {
    const Frame fr = stack.back();
    stack.pop_back();
    const detail::DocNode* n = fr.node;
    switch (n->kind) {
      case DocKind::text:
        out.lines.back() += n->content;
        break;
      case DocKind::newline:
        out.lines.emplace_back(fr.indent, ' ');
        out.indents.push_back(fr.indent);
        break;
      case DocKind::concat:
        stack.push_back({n->right.get(), fr.indent});
        stack.push_back({n->left.get(), fr.indent});
        break;
      case DocKind::nest:
        stack.push_back({n->left.get(), fr.indent + n->amount});
        break;
      case DocKind::align:
        stack.push_back({n->left.get(), out.lines.back().size()});
        break;
      case DocKind::reset:
        stack.push_back({n->left.get(), 0});
        break;
      case DocKind::with_cost:
        stack.push_back({n->left.get(), fr.indent});
        break;
      case DocKind::fail:
      case DocKind::alt:
        throw std::logic_error("payload is not a renderable choiceless document");
    }
  }
  return out;
}

}  // namespace

Layout render_payload(const Payload& p) {
  if (const auto* d = std::get_if<Doc>(&p)) return render_doc(*d);
  return render_tokens(std::get<TokenPtr>(p));
}

}  // namespace pretty
