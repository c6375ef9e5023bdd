#pragma once

#include "lalg/error.hpp"

#include <map>
#include <string>
#include <vector>

namespace lalg {

enum class VarKind {
    SourceCoord, // worldsheet / source-base coordinate x^mu
    TargetCoord, // target-base coordinate X^i
    Aux,
};

using VarId = int;

/// Session-scoped interning table for variables. Declaration order is the
/// global variable order used by the graded-lex monomial order, so two runs
/// that declare the same names in the same order print identically.
/// Not thread safe for concurrent declare(); treat as create-then-share.
class VarPool {
  public:
    VarId declare(const std::string& name, VarKind kind)
    {
        auto it = index_.find(name);
        if (it != index_.end()) {
            if (kinds_[it->second] != kind)
                fail(Errc::NameClash, "variable '" + name + "' already declared with a different kind");
            return it->second;
        }
        VarId id = static_cast<VarId>(names_.size());
        names_.push_back(name);
        kinds_.push_back(kind);
        index_.emplace(name, id);
        return id;
    }

    VarId find(const std::string& name) const
    {
        auto it = index_.find(name);
        if (it == index_.end())
            fail(Errc::UndeclaredVariable, "undeclared variable '" + name + "'");
        return it->second;
    }

    bool contains(const std::string& name) const { return index_.count(name) != 0; }

    const std::string& name(VarId id) const { return names_.at(static_cast<size_t>(id)); }
    VarKind kind(VarId id) const { return kinds_.at(static_cast<size_t>(id)); }
    int size() const { return static_cast<int>(names_.size()); }

  private:
    std::vector<std::string> names_;
    std::vector<VarKind> kinds_;
    std::map<std::string, VarId> index_;
};

} // namespace lalg
