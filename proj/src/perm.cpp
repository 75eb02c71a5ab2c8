#include "edlab/perm.hpp"

#include <sstream>
#include <stdexcept>

namespace edlab {

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p]) {
      throw std::invalid_argument("Perm: image list is not a bijection");
    }
    seen[p] = 1;
  }
}

Perm Perm::identity(std::size_t degree) {
  Perm p;
  p.images_.resize(degree);
  for (std::size_t i = 0; i < degree; ++i) p.images_[i] = static_cast<Point>(i);
  return p;
}

Perm Perm::from_cycles(std::size_t degree,
                       const std::vector<std::vector<std::size_t>>& cycles) {
  std::vector<Point> img(degree);
  for (std::size_t i = 0; i < degree; ++i) img[i] = static_cast<Point>(i);
  std::vector<char> touched(degree, 0);
  for (const auto& c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] >= degree) throw std::invalid_argument("Perm: cycle point out of range");
      if (touched[c[k]]) throw std::invalid_argument("Perm: cycles are not disjoint");
      touched[c[k]] = 1;
      img[c[k]] = static_cast<Point>(c[(k + 1) % c.size()]);
    }
  }
  return Perm(std::move(img));
}

Perm Perm::operator*(const Perm& rhs) const {
  Perm out;
  out.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) out.images_[x] = rhs.images_[images_[x]];
  return out;
}

Perm Perm::inverse() const {
  Perm out;
  out.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) out.images_[images_[x]] = static_cast<Point>(x);
  return out;
}

bool Perm::is_identity() const noexcept {
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != x) return false;
  return true;
}

Perm Perm::extended(std::size_t degree) const { return shifted(0, degree); }

Perm Perm::shifted(std::size_t offset, std::size_t degree) const {
  if (offset + images_.size() > degree) throw std::invalid_argument("Perm: shift exceeds degree");
  Perm out = identity(degree);
  for (std::size_t x = 0; x < images_.size(); ++x)
    out.images_[x + offset] = static_cast<Point>(images_[x] + offset);
  return out;
}

std::vector<std::vector<std::size_t>> Perm::cycles() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<char> seen(images_.size(), 0);
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (seen[x] || images_[x] == x) continue;
    std::vector<std::size_t> c;
    for (std::size_t y = x; !seen[y]; y = images_[y]) {
      seen[y] = 1;
      c.push_back(y);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string Perm::to_string() const {
  std::ostringstream os;
  const auto cs = cycles();
  if (cs.empty()) return "()";
  for (const auto& c : cs) {
    os << '(';
    for (std::size_t k = 0; k < c.size(); ++k) os << (k ? " " : "") << c[k];
    os << ')';
  }
  return os.str();
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  // FNV-1a over the image list.
  std::uint64_t h = 1469598103934665603ULL;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace edlab
