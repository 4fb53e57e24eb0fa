#include "causalmetrics/layout.hpp"

#include <set>
#include <stdexcept>

namespace causalmetrics {

SystemLayout::SystemLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::set<std::string> seen;
  total_dim_ = 1;
  for (const auto& f : factors_) {
    if (f.dim < 1) throw std::invalid_argument("layout: factor dimension must be >= 1");
    if (!seen.insert(f.label).second)
      throw std::invalid_argument("layout: duplicate label '" + f.label + "'");
    total_dim_ *= f.dim;
  }
}

SystemLayout SystemLayout::single(const std::string& label, int dim) {
  return SystemLayout({{label, dim}});
}

std::vector<int> SystemLayout::dims() const {
  std::vector<int> d;
  d.reserve(factors_.size());
  for (const auto& f : factors_) d.push_back(f.dim);
  return d;
}

int SystemLayout::position(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (factors_[i].label == label) return i;
  return -1;
}

SystemLayout SystemLayout::tensor(const SystemLayout& other) const {
  std::vector<Factor> all = factors_;
  all.insert(all.end(), other.factors_.begin(), other.factors_.end());
  return SystemLayout(std::move(all));
}

SystemLayout SystemLayout::select(const std::vector<int>& positions) const {
  std::vector<Factor> sel;
  sel.reserve(positions.size());
  for (int p : positions) sel.push_back(factors_.at(p));
  return SystemLayout(std::move(sel));
}

bool SystemLayout::operator==(const SystemLayout& other) const {
  if (size() != other.size()) return false;
  for (int i = 0; i < size(); ++i)
    if (factors_[i].label != other.factors_[i].label || factors_[i].dim != other.factors_[i].dim)
      return false;
  return true;
}

} // namespace causalmetrics
