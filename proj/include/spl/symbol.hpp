#pragma once

#include <compare>
#include <functional>
#include <string>
#include <string_view>

namespace spl {

// A modality label. Names follow the same lexical rule as variables:
// [a-z][a-zA-Z0-9_]*. Symbols are ordered so they can key std::map/std::set.
class Symbol {
public:
    explicit Symbol(std::string name);

    static bool valid_name(std::string_view s);

    const std::string& name() const { return name_; }

    auto operator<=>(const Symbol&) const = default;

private:
    std::string name_;
};

} // namespace spl

template <>
struct std::hash<spl::Symbol> {
    std::size_t operator()(const spl::Symbol& s) const {
        return std::hash<std::string>{}(s.name());
    }
};
