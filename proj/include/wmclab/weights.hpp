#pragma once

#include <map>
#include <string>

#include "wmclab/rational.hpp"
#include "wmclab/varid.hpp"

namespace wmclab {

/// Map from variables to their marginal probabilities, with a default for
/// unlisted variables (1/2 unless overridden).  All weights are exact
/// rationals in [0, 1].
class WeightMap {
  public:
    WeightMap() : default_(1, 2) {}
    explicit WeightMap(Rational default_weight);

    /// Throws errc::invalid_assignment if p is outside [0, 1].
    void set(const VarId& var, Rational p);

    const Rational& get(const VarId& var) const {
        auto it = map_.find(var);
        return it == map_.end() ? default_ : it->second;
    }
    const Rational& default_weight() const { return default_; }

    /// File format: optional first line "default p", then "varname p" lines,
    /// where p is "a/b" or a decimal; '#' comments.
    static WeightMap parse(const std::string& text);
    std::string str() const;

  private:
    Rational default_;
    std::map<VarId, Rational> map_;
};

} // namespace wmclab
