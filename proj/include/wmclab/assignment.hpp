#pragma once

#include <map>
#include <optional>
#include <string>

#include "wmclab/varid.hpp"

namespace wmclab {

/// Partial assignment of truth values to variables.  Binding a variable to
/// two different values raises errc::invalid_assignment; re-binding to the
/// same value is a no-op.
class Assignment {
  public:
    Assignment() = default;

    /// Bind var := value.  Throws on conflict.
    void set(const VarId& var, bool value);

    std::optional<bool> get(const VarId& var) const {
        auto it = map_.find(var);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    bool contains(const VarId& var) const { return map_.count(var) != 0; }
    std::size_t size() const { return map_.size(); }
    bool empty() const { return map_.empty(); }

    /// Merge all bindings of other into this one.  Throws on any conflict.
    void merge(const Assignment& other);

    /// Union of two assignments; throws on conflict.
    static Assignment merged(const Assignment& a, const Assignment& b);

    auto begin() const { return map_.begin(); }
    auto end() const { return map_.end(); }

    /// One "name value" pair per line; '#' starts a comment.
    static Assignment parse(const std::string& text);
    std::string str() const;

    friend bool operator==(const Assignment&, const Assignment&) = default;

  private:
    std::map<VarId, bool> map_;
};

} // namespace wmclab
