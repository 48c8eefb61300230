#include "clonekit/relation.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace clonekit {

Relation::Relation(int k, int arity) : k_(k), arity_(arity) {
  if (k < 1) throw std::invalid_argument("universe size must be positive");
  if (arity < 1) throw std::invalid_argument("relations must have positive arity");
  space_ = pow_size(k, arity);
  words_.assign((space_ + 63) / 64, 0);
}

Relation Relation::from_tuples(int k, int arity,
                               const std::vector<std::vector<Val>>& tuples) {
  Relation r(k, arity);
  for (const auto& t : tuples) {
    if (static_cast<int>(t.size()) != arity)
      throw std::invalid_argument("tuple length does not match relation arity");
    r.insert(t);
  }
  return r;
}

Relation Relation::full(int k, int arity) {
  Relation r(k, arity);
  for (std::size_t i = 0; i < r.space_; ++i) r.insert_index(i);
  return r;
}

Relation Relation::diagonal(int k, int arity) {
  Relation r(k, arity);
  std::vector<Val> t(static_cast<std::size_t>(arity));
  for (int v = 0; v < k; ++v) {
    std::fill(t.begin(), t.end(), static_cast<Val>(v));
    r.insert(t);
  }
  return r;
}

std::size_t Relation::size() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool Relation::contains_index(std::size_t index) const {
  if (index >= space_) throw std::out_of_range("tuple index out of range");
  return (words_[index >> 6] >> (index & 63)) & 1;
}

bool Relation::contains(std::span<const Val> t) const {
  if (static_cast<int>(t.size()) != arity_)
    throw std::invalid_argument("tuple length does not match relation arity");
  return contains_index(encode_tuple(k_, t));
}

void Relation::insert_index(std::size_t index) {
  if (index >= space_) throw std::out_of_range("tuple index out of range");
  words_[index >> 6] |= std::uint64_t{1} << (index & 63);
}

void Relation::insert(std::span<const Val> t) {
  if (static_cast<int>(t.size()) != arity_)
    throw std::invalid_argument("tuple length does not match relation arity");
  insert_index(encode_tuple(k_, t));
}

std::vector<std::uint32_t> Relation::tuple_indices() const {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < space_; ++i)
    if (contains_index(i)) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

std::vector<std::vector<Val>> Relation::tuples() const {
  std::vector<std::vector<Val>> out;
  for (std::uint32_t idx : tuple_indices()) out.push_back(decode_tuple(k_, arity_, idx));
  return out;
}

bool Relation::is_reflexive() const {
  if (arity_ != 2) return false;
  for (int v = 0; v < k_; ++v) {
    Val t[2] = {static_cast<Val>(v), static_cast<Val>(v)};
    if (!contains(t)) return false;
  }
  return true;
}

bool Relation::is_symmetric() const {
  if (arity_ != 2) return false;
  for (const auto& t : tuples()) {
    Val rev[2] = {t[1], t[0]};
    if (!contains(rev)) return false;
  }
  return true;
}

bool Relation::is_transitive() const {
  if (arity_ != 2) return false;
  auto ts = tuples();
  for (const auto& xy : ts)
    for (const auto& yz : ts) {
      if (xy[1] != yz[0]) continue;
      Val xz[2] = {xy[0], yz[1]};
      if (!contains(xz)) return false;
    }
  return true;
}

bool Relation::is_antisymmetric() const {
  if (arity_ != 2) return false;
  for (const auto& t : tuples()) {
    if (t[0] == t[1]) continue;
    Val rev[2] = {t[1], t[0]};
    if (contains(rev)) return false;
  }
  return true;
}

bool Relation::is_equivalence() const {
  return arity_ == 2 && is_reflexive() && is_symmetric() && is_transitive();
}

bool Relation::is_totally_reflexive() const {
  // All tuples with a repeated component must be present.
  for (std::size_t i = 0; i < space_; ++i) {
    auto t = decode_tuple(k_, arity_, i);
    bool repeat = false;
    for (std::size_t a = 0; a < t.size() && !repeat; ++a)
      for (std::size_t b = a + 1; b < t.size(); ++b)
        if (t[a] == t[b]) {
          repeat = true;
          break;
        }
    if (repeat && !contains_index(i)) return false;
  }
  return true;
}

bool Relation::is_totally_symmetric() const {
  std::vector<int> perm(static_cast<std::size_t>(arity_));
  std::iota(perm.begin(), perm.end(), 0);
  for (const auto& t : tuples()) {
    std::vector<int> p = perm;
    do {
      std::vector<Val> im(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) im[i] = t[p[i]];
      if (!contains(im)) return false;
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return true;
}

Relation Relation::permuted_coords(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != arity_)
    throw std::invalid_argument("coordinate permutation has wrong length");
  Relation out(k_, arity_);
  for (const auto& t : tuples()) {
    std::vector<Val> im(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) im[i] = t[static_cast<std::size_t>(perm[i])];
    out.insert(im);
  }
  return out;
}

Relation Relation::canonical_coord_form() const {
  std::vector<int> perm(static_cast<std::size_t>(arity_));
  std::iota(perm.begin(), perm.end(), 0);
  Relation best = *this;
  std::vector<int> p = perm;
  while (std::next_permutation(p.begin(), p.end())) {
    Relation cand = permuted_coords(p);
    if (cand < best) best = cand;
  }
  return best;
}

Relation Relation::mapped_elements(std::span<const Val> image) const {
  if (static_cast<int>(image.size()) != k_)
    throw std::invalid_argument("element map has wrong length");
  Relation out(k_, arity_);
  for (const auto& t : tuples()) {
    std::vector<Val> im(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) im[i] = image[t[i]];
    out.insert(im);
  }
  return out;
}

bool preserves(const Operation& f, const Relation& rho) {
  if (f.k() != rho.k()) throw std::invalid_argument("universe mismatch");
  const int n = f.arity();
  const int r = rho.arity();
  const auto tup = rho.tuples();
  const std::size_t t = tup.size();
  if (t == 0) return true;

  std::vector<std::size_t> sel(static_cast<std::size_t>(n), 0);
  std::vector<Val> args(static_cast<std::size_t>(n));
  std::vector<Val> out(static_cast<std::size_t>(r));
  for (;;) {
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < n; ++j) args[static_cast<std::size_t>(j)] = tup[sel[static_cast<std::size_t>(j)]][static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(i)] = f.table()[encode_tuple(f.k(), args)];
    }
    if (!rho.contains(out)) return false;
    int pos = n - 1;
    while (pos >= 0 && ++sel[static_cast<std::size_t>(pos)] == t) {
      sel[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return true;
}

bool preserves_naive(const Operation& f, const Relation& rho) {
  if (f.k() != rho.k()) throw std::invalid_argument("universe mismatch");
  const int n = f.arity();
  const int r = rho.arity();
  const std::size_t points = pow_size(f.k(), n);
  // Enumerate all r-tuples of points of A^n, keep the coordinatewise related
  // ones, and push each through f.
  std::vector<std::size_t> pts(static_cast<std::size_t>(r), 0);
  std::vector<std::vector<Val>> dec(static_cast<std::size_t>(r));
  std::vector<Val> col(static_cast<std::size_t>(r));
  std::vector<Val> args(static_cast<std::size_t>(n));
  std::vector<Val> out(static_cast<std::size_t>(r));
  for (;;) {
    for (int i = 0; i < r; ++i) dec[static_cast<std::size_t>(i)] = decode_tuple(f.k(), n, pts[static_cast<std::size_t>(i)]);
    bool related = true;
    for (int j = 0; j < n && related; ++j) {
      for (int i = 0; i < r; ++i) col[static_cast<std::size_t>(i)] = dec[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (!rho.contains(col)) related = false;
    }
    if (related) {
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < n; ++j) args[static_cast<std::size_t>(j)] = dec[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = f.table()[encode_tuple(f.k(), args)];
      }
      if (!rho.contains(out)) return false;
    }
    int pos = r - 1;
    while (pos >= 0 && ++pts[static_cast<std::size_t>(pos)] == points) {
      pts[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return true;
}

Relation restrict_relation(const Relation& rho, std::span<const Val> subset) {
  if (subset.empty()) throw std::invalid_argument("restriction subset must be nonempty");
  std::vector<int> position(static_cast<std::size_t>(rho.k()), -1);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] >= rho.k()) throw std::invalid_argument("subset element out of range");
    if (i > 0 && subset[i] <= subset[i - 1])
      throw std::invalid_argument("subset must be listed in ascending order");
    position[subset[i]] = static_cast<int>(i);
  }
  Relation out(static_cast<int>(subset.size()), rho.arity());
  for (const auto& t : rho.tuples()) {
    std::vector<Val> im(t.size());
    bool inside = true;
    for (std::size_t i = 0; i < t.size() && inside; ++i) {
      if (position[t[i]] < 0)
        inside = false;
      else
        im[i] = static_cast<Val>(position[t[i]]);
    }
    if (inside) out.insert(im);
  }
  return out;
}

Relation pullback_relation(const Relation& rho, std::span<const Val> phi, int k) {
  if (static_cast<int>(phi.size()) != k)
    throw std::invalid_argument("phi must be defined on all of {0..k-1}");
  for (Val v : phi)
    if (v >= rho.k()) throw std::invalid_argument("phi value out of target range");
  Relation out(k, rho.arity());
  std::vector<Val> im(static_cast<std::size_t>(rho.arity()));
  for (std::size_t i = 0; i < out.space(); ++i) {
    auto t = decode_tuple(k, rho.arity(), i);
    for (std::size_t j = 0; j < t.size(); ++j) im[j] = phi[t[j]];
    if (rho.contains(im)) out.insert_index(i);
  }
  return out;
}

Relation read_relation_text(std::istream& in) {
  int k = 0, r = 0;
  std::size_t t = 0;
  if (!(in >> k >> r >> t)) throw std::invalid_argument("bad relation header");
  Relation out(k, r);
  std::vector<Val> tup(static_cast<std::size_t>(r));
  for (std::size_t row = 0; row < t; ++row) {
    for (int i = 0; i < r; ++i) {
      int v;
      if (!(in >> v)) throw std::invalid_argument("truncated relation file");
      if (v < 0 || v >= k) throw std::invalid_argument("relation entry out of range");
      tup[static_cast<std::size_t>(i)] = static_cast<Val>(v);
    }
    out.insert(tup);
  }
  return out;
}

void write_relation_text(std::ostream& out, const Relation& rho) {
  auto ts = rho.tuples();
  out << rho.k() << ' ' << rho.arity() << ' ' << ts.size() << '\n';
  for (const auto& t : ts) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) out << ' ';
      out << static_cast<int>(t[i]);
    }
    out << '\n';
  }
}

Relation parse_relation_text(const std::string& text) {
  std::istringstream in(text);
  return read_relation_text(in);
}

std::string relation_to_text(const Relation& rho) {
  std::ostringstream out;
  write_relation_text(out, rho);
  return out.str();
}

Relation load_relation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open relation file: " + path);
  return read_relation_text(in);
}

}  // namespace clonekit
