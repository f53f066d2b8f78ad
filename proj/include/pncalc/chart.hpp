#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pncalc/errors.hpp"

namespace pncalc {

/// An ordered list of coordinate names. Charts are immutable and cheap to
/// copy; equality is by value (same names in the same order), so two
/// independently constructed charts with equal names are interchangeable.
class Chart {
public:
  explicit Chart(std::vector<std::string> names)
      : data_(std::make_shared<const Data>(std::move(names))) {
    if (data_->names.empty())
      throw DimensionMismatch("a chart needs at least one coordinate");
    for (const auto& n : data_->names)
      if (!valid_identifier(n))
        throw InvariantError("invalid coordinate name '" + n + "'");
    if (data_->index.size() != data_->names.size())
      throw InvariantError("duplicate coordinate name in chart");
  }

  std::size_t dim() const noexcept { return data_->names.size(); }

  const std::string& name(std::size_t i) const { return data_->names.at(i); }

  const std::vector<std::string>& names() const noexcept { return data_->names; }

  /// Position of a coordinate name, if present.
  std::optional<std::size_t> index(std::string_view name) const {
    auto it = data_->index.find(std::string(name));
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
  }

  bool operator==(const Chart& other) const {
    return data_ == other.data_ || data_->names == other.data_->names;
  }
  bool operator!=(const Chart& other) const { return !(*this == other); }

  /// letter (letter | digit | "_")*
  static bool valid_identifier(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0])))
      return false;
    for (char c : s)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        return false;
    return true;
  }

private:
  struct Data {
    std::vector<std::string> names;
    std::unordered_map<std::string, std::size_t> index;
    explicit Data(std::vector<std::string> ns) : names(std::move(ns)) {
      for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], i);
    }
  };
  std::shared_ptr<const Data> data_;
};

}  // namespace pncalc
