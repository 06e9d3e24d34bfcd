#include "bil/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "bil/error.hpp"

namespace bil {

bool is_valid_letter(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name.substr(1)) {
    const auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '_' && c != '+' && c != '-') return false;
  }
  return name != "true" && name != "false";
}

Signature::Signature(std::initializer_list<std::string> letters) {
  for (const auto& l : letters) insert(l);
}

Signature::Signature(std::span<const std::string> letters) {
  for (const auto& l : letters) insert(l);
}

void Signature::insert(const std::string& letter) {
  if (!is_valid_letter(letter)) throw InvalidArgument("malformed letter '" + letter + "'");
  if (index_.insert(letter).second) letters_.push_back(letter);
}

bool Signature::contains(std::string_view letter) const {
  return index_.count(std::string(letter)) != 0;
}

bool Signature::is_subset_of(const Signature& other) const {
  return std::all_of(letters_.begin(), letters_.end(),
                     [&](const std::string& l) { return other.contains(l); });
}

bool Signature::same_letters(const Signature& other) const {
  return size() == other.size() && is_subset_of(other);
}

struct Formula::Node {
  Connective kind = Connective::bottom;
  std::string letter;
  Formula lhs_f{nullptr};
  Formula rhs_f{nullptr};
  int rank = 0;
  std::size_t size = 1;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Formula::Formula() : Formula(bottom()) {}

Formula Formula::bottom() {
  static const Formula b = [] {
    auto n = std::make_shared<Node>();
    n->hash = 0x51ed27;
    return Formula(std::shared_ptr<const Node>(std::move(n)));
  }();
  return b;
}

Formula Formula::atom(std::string letter) {
  if (!is_valid_letter(letter)) throw InvalidArgument("malformed letter '" + letter + "'");
  auto n = std::make_shared<Node>();
  n->kind = Connective::atom;
  n->hash = mix(1, std::hash<std::string>{}(letter));
  n->letter = std::move(letter);
  return Formula(std::shared_ptr<const Node>(std::move(n)));
}

Formula Formula::binary(Connective c, Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = c;
  const bool shifts = c == Connective::impl || c == Connective::coimpl;
  n->rank = std::max(lhs.rank(), rhs.rank()) + (shifts ? 1 : 0);
  n->size = 1 + lhs.size() + rhs.size();
  n->hash = mix(mix(static_cast<std::size_t>(c) * 7919, lhs.node_->hash), rhs.node_->hash);
  n->lhs_f = std::move(lhs);
  n->rhs_f = std::move(rhs);
  return Formula(std::shared_ptr<const Node>(std::move(n)));
}

Formula Formula::conj(Formula lhs, Formula rhs) { return binary(Connective::conj, std::move(lhs), std::move(rhs)); }
Formula Formula::disj(Formula lhs, Formula rhs) { return binary(Connective::disj, std::move(lhs), std::move(rhs)); }
Formula Formula::impl(Formula lhs, Formula rhs) { return binary(Connective::impl, std::move(lhs), std::move(rhs)); }
Formula Formula::coimpl(Formula lhs, Formula rhs) { return binary(Connective::coimpl, std::move(lhs), std::move(rhs)); }

Formula Formula::top() { return impl(bottom(), bottom()); }
Formula Formula::neg(Formula f) { return impl(std::move(f), bottom()); }

Formula Formula::big_conj(std::span<const Formula> fs) {
  if (fs.empty()) return top();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula Formula::big_disj(std::span<const Formula> fs) {
  if (fs.empty()) return bottom();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

Connective Formula::kind() const noexcept { return node_->kind; }

const std::string& Formula::letter() const {
  if (node_->kind != Connective::atom) throw InvalidArgument("letter() on a non-atom");
  return node_->letter;
}

const Formula& Formula::lhs() const {
  if (!is_binary()) throw InvalidArgument("lhs() on a nullary formula");
  return node_->lhs_f;
}

const Formula& Formula::rhs() const {
  if (!is_binary()) throw InvalidArgument("rhs() on a nullary formula");
  return node_->rhs_f;
}

bool Formula::is_binary() const noexcept {
  return node_->kind != Connective::bottom && node_->kind != Connective::atom;
}

int Formula::rank() const noexcept { return node_->rank; }
std::size_t Formula::size() const noexcept { return node_->size; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.hash != y.hash || x.size != y.size) return false;
  switch (x.kind) {
    case Connective::bottom:
      return true;
    case Connective::atom:
      return x.letter == y.letter;
    default:
      return x.lhs_f == y.lhs_f && x.rhs_f == y.rhs_f;
  }
}

Signature letters(const Formula& f) {
  Signature out;
  // explicit stack; left child must be visited first
  std::vector<const Formula*> stack{&f};
  while (!stack.empty()) {
    const Formula* g = stack.back();
    stack.pop_back();
    if (g->kind() == Connective::atom) {
      out.insert(g->letter());
    } else if (g->is_binary()) {
      stack.push_back(&g->rhs());
      stack.push_back(&g->lhs());
    }
  }
  return out;
}

namespace {

// precedence: -> 1, -< 2, | 3, & 4, atoms 5
int prec(Connective c) {
  switch (c) {
    case Connective::impl: return 1;
    case Connective::coimpl: return 2;
    case Connective::disj: return 3;
    case Connective::conj: return 4;
    default: return 5;
  }
}

void render_into(const Formula& f, std::string& out);

void child(const Formula& f, int min_prec, bool bracket_coimpl, std::string& out) {
  const int p = prec(f.kind());
  const bool paren = p < min_prec || (bracket_coimpl && f.kind() == Connective::coimpl);
  if (paren) out += '(';
  render_into(f, out);
  if (paren) out += ')';
}

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Connective::bottom:
      out += "false";
      return;
    case Connective::atom:
      out += f.letter();
      return;
    case Connective::impl:
      child(f.lhs(), 2, true, out);
      out += " -> ";
      child(f.rhs(), 1, true, out);
      return;
    case Connective::coimpl:
      child(f.lhs(), 2, false, out);
      out += " -< ";
      child(f.rhs(), 3, false, out);
      return;
    case Connective::disj:
      child(f.lhs(), 3, false, out);
      out += " | ";
      child(f.rhs(), 4, false, out);
      return;
    case Connective::conj:
      child(f.lhs(), 4, false, out);
      out += " & ";
      child(f.rhs(), 5, false, out);
      return;
  }
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

}  // namespace bil
