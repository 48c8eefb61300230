#include "clonekit/operation.hpp"

#include <algorithm>
#include <stdexcept>

#include "clonekit/errors.hpp"

namespace clonekit {

std::size_t pow_size(int k, int n) {
  if (k < 1) throw std::invalid_argument("universe size must be positive");
  if (n < 0) throw std::invalid_argument("exponent must be nonnegative");
  std::size_t r = 1;
  for (int i = 0; i < n; ++i) {
    if (r > (std::size_t{1} << 40) / static_cast<std::size_t>(k))
      throw std::invalid_argument("table size overflow");
    r *= static_cast<std::size_t>(k);
  }
  return r;
}

std::size_t encode_tuple(int k, std::span<const Val> t) {
  if (t.empty()) throw std::invalid_argument("empty tuple");
  std::size_t idx = 0;
  for (Val v : t) {
    if (v >= k) throw std::invalid_argument("tuple component out of range");
    idx = idx * static_cast<std::size_t>(k) + v;
  }
  return idx;
}

std::vector<Val> decode_tuple(int k, int arity, std::size_t index) {
  if (arity < 1) throw std::invalid_argument("arity must be positive");
  std::vector<Val> t(static_cast<std::size_t>(arity));
  for (int i = arity - 1; i >= 0; --i) {
    t[static_cast<std::size_t>(i)] = static_cast<Val>(index % static_cast<std::size_t>(k));
    index /= static_cast<std::size_t>(k);
  }
  if (index != 0) throw std::invalid_argument("index out of range for arity");
  return t;
}

Operation::Operation(int k, int arity, std::vector<Val> table)
    : k_(k), arity_(arity), table_(std::move(table)) {
  if (k < 1) throw std::invalid_argument("universe size must be positive");
  if (arity < 1) throw std::invalid_argument("operations must have positive arity");
  if (table_.size() != pow_size(k, arity))
    throw std::invalid_argument("table length must be k^arity");
  for (Val v : table_)
    if (v >= k) throw std::invalid_argument("table entry out of range");
}

Operation Operation::projection(int k, int arity, int coord) {
  if (coord < 0 || coord >= arity) throw std::invalid_argument("projection coordinate out of range");
  std::size_t n = pow_size(k, arity);
  std::size_t stride = pow_size(k, arity - 1 - coord);
  std::vector<Val> table(n);
  for (std::size_t i = 0; i < n; ++i)
    table[i] = static_cast<Val>((i / stride) % static_cast<std::size_t>(k));
  return Operation(k, arity, std::move(table));
}

Operation Operation::constant(int k, int arity, Val value) {
  if (value >= k) throw std::invalid_argument("constant value out of range");
  return Operation(k, arity, std::vector<Val>(pow_size(k, arity), value));
}

Operation Operation::unary_map(int k, std::vector<Val> images) {
  if (static_cast<int>(images.size()) != k)
    throw std::invalid_argument("unary map needs k images");
  return Operation(k, 1, std::move(images));
}

Operation Operation::discriminator(int k) {
  if (k < 2) throw std::invalid_argument("discriminator needs k >= 2");
  std::size_t n = pow_size(k, 3);
  std::vector<Val> table(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto t = decode_tuple(k, 3, i);
    table[i] = (t[0] == t[1]) ? t[2] : t[0];
  }
  return Operation(k, 3, std::move(table));
}

Operation Operation::from_string(const std::string& text) {
  auto p1 = text.find(':');
  auto p2 = text.find(':', p1 == std::string::npos ? p1 : p1 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos)
    throw std::invalid_argument("operation format is k:arity:digits");
  int k = std::stoi(text.substr(0, p1));
  int arity = std::stoi(text.substr(p1 + 1, p2 - p1 - 1));
  std::string digits = text.substr(p2 + 1);
  std::vector<Val> table;
  table.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("operation digits must be 0-9");
    table.push_back(static_cast<Val>(c - '0'));
  }
  return Operation(k, arity, std::move(table));
}

Val Operation::operator()(std::span<const Val> args) const {
  if (static_cast<int>(args.size()) != arity_)
    throw std::invalid_argument("argument count does not match arity");
  return table_[encode_tuple(k_, args)];
}

std::vector<Val> Operation::range() const {
  std::vector<bool> seen(static_cast<std::size_t>(k_), false);
  for (Val v : table_) seen[v] = true;
  std::vector<Val> out;
  for (int v = 0; v < k_; ++v)
    if (seen[static_cast<std::size_t>(v)]) out.push_back(static_cast<Val>(v));
  return out;
}

std::vector<std::vector<std::uint32_t>> Operation::kernel() const {
  std::vector<std::vector<std::uint32_t>> blocks(static_cast<std::size_t>(k_));
  for (std::size_t i = 0; i < table_.size(); ++i)
    blocks[table_[i]].push_back(static_cast<std::uint32_t>(i));
  std::erase_if(blocks, [](const auto& b) { return b.empty(); });
  return blocks;
}

bool Operation::depends_on(int coord) const {
  if (coord < 0 || coord >= arity_) throw std::invalid_argument("coordinate out of range");
  std::size_t stride = pow_size(k_, arity_ - 1 - coord);
  std::size_t n = table_.size();
  for (std::size_t base = 0; base < n; ++base) {
    if ((base / stride) % static_cast<std::size_t>(k_) != 0) continue;
    Val first = table_[base];
    for (int v = 1; v < k_; ++v)
      if (table_[base + static_cast<std::size_t>(v) * stride] != first) return true;
  }
  return false;
}

int Operation::essential_arity() const {
  int count = 0;
  for (int i = 0; i < arity_; ++i)
    if (depends_on(i)) ++count;
  return count;
}

std::optional<Operation> Operation::unary_collapse() const {
  int essential = -1;
  for (int i = 0; i < arity_; ++i) {
    if (!depends_on(i)) continue;
    if (essential >= 0) return std::nullopt;
    essential = i;
  }
  std::vector<Val> images(static_cast<std::size_t>(k_));
  if (essential < 0) {
    std::fill(images.begin(), images.end(), table_[0]);
  } else {
    std::size_t stride = pow_size(k_, arity_ - 1 - essential);
    for (int v = 0; v < k_; ++v)
      images[static_cast<std::size_t>(v)] = table_[static_cast<std::size_t>(v) * stride];
  }
  return Operation(k_, 1, std::move(images));
}

std::string Operation::to_string() const {
  std::string out = std::to_string(k_) + ":" + std::to_string(arity_) + ":";
  for (Val v : table_) out.push_back(static_cast<char>('0' + v));
  return out;
}

Operation compose(const Operation& f, std::span<const Operation> gs) {
  if (static_cast<int>(gs.size()) != f.arity())
    throw std::invalid_argument("composition needs one inner operation per argument of f");
  int m = gs.empty() ? 0 : gs[0].arity();
  for (const Operation& g : gs) {
    if (g.k() != f.k()) throw std::invalid_argument("universe mismatch in composition");
    if (g.arity() != m) throw std::invalid_argument("inner operations must share arity");
  }
  std::size_t points = pow_size(f.k(), m);
  std::vector<Val> table(points);
  std::vector<Val> args(gs.size());
  for (std::size_t p = 0; p < points; ++p) {
    for (std::size_t j = 0; j < gs.size(); ++j) args[j] = gs[j].at(p);
    table[p] = f.table()[encode_tuple(f.k(), args)];
  }
  return Operation(f.k(), m, std::move(table));
}

Operation restrict_operation(const Operation& f, std::span<const Val> subset) {
  if (subset.empty()) throw std::invalid_argument("restriction subset must be nonempty");
  std::vector<int> position(static_cast<std::size_t>(f.k()), -1);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] >= f.k()) throw std::invalid_argument("subset element out of range");
    if (i > 0 && subset[i] <= subset[i - 1])
      throw std::invalid_argument("subset must be listed in ascending order");
    position[subset[i]] = static_cast<int>(i);
  }
  int kb = static_cast<int>(subset.size());
  std::size_t points = pow_size(kb, f.arity());
  std::vector<Val> table(points);
  std::vector<Val> args(static_cast<std::size_t>(f.arity()));
  for (std::size_t p = 0; p < points; ++p) {
    auto small = decode_tuple(kb, f.arity(), p);
    for (std::size_t j = 0; j < small.size(); ++j) args[j] = subset[small[j]];
    Val out = f(args);
    if (position[out] < 0)
      throw NotClosedError("operation is not closed on the given subset");
    table[p] = static_cast<Val>(position[out]);
  }
  return Operation(kb, f.arity(), std::move(table));
}

std::vector<Operation> all_unary_maps(int k) {
  std::size_t count = pow_size(k, k);
  std::vector<Operation> out;
  out.reserve(count);
  for (std::size_t code = 0; code < count; ++code)
    out.emplace_back(k, 1, decode_tuple(k, k, code));
  return out;
}

std::vector<Operation> tminus_monoid(int k) {
  std::vector<Operation> out;
  for (const Operation& u : all_unary_maps(k)) {
    bool identity = true;
    for (int v = 0; v < k; ++v)
      if (u.at(static_cast<std::size_t>(v)) != v) identity = false;
    bool permutation = static_cast<int>(u.range().size()) == k;
    if (identity || !permutation) out.push_back(u);
  }
  return out;
}

}  // namespace clonekit
