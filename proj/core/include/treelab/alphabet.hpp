#pragma once

#include <algorithm>
#include <map>
#include <string>

#include "treelab/errors.hpp"

namespace treelab {

/// A ranked alphabet: finite map from terminal names to arities.
class RankedAlphabet {
 public:
  RankedAlphabet() = default;

  explicit RankedAlphabet(std::map<std::string, int> symbols)
      : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw DomainError("ranked alphabet must be non-empty");
    for (const auto& [name, rank] : symbols_) {
      if (rank < 0) throw DomainError("negative rank for terminal " + name);
      max_rank_ = std::max(max_rank_, rank);
    }
  }

  bool contains(const std::string& name) const { return symbols_.count(name) > 0; }

  int rank(const std::string& name) const {
    auto it = symbols_.find(name);
    if (it == symbols_.end()) throw DomainError("unknown terminal " + name);
    return it->second;
  }

  int max_rank() const { return max_rank_; }
  const std::map<std::string, int>& symbols() const { return symbols_; }

  bool operator==(const RankedAlphabet& other) const = default;

 private:
  std::map<std::string, int> symbols_;
  int max_rank_ = 0;
};

}  // namespace treelab
