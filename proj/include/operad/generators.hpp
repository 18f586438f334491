#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace operad {

using GeneratorId = std::int32_t;

/// A basis element of the generating collection: a named operation of fixed arity.
struct Generator {
    std::string name;
    int arity = 2;
    int precedence = 0;

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Ordered set of generators. Ids are ranks by precedence, so id 0 is the
/// smallest generator and comparing ids compares precedence.
class GeneratorSet {
public:
    GeneratorSet() = default;

    explicit GeneratorSet(std::vector<Generator> gens) : gens_(std::move(gens)) {
        std::sort(gens_.begin(), gens_.end(),
                  [](const Generator& a, const Generator& b) { return a.precedence < b.precedence; });
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].arity < 1) {
                throw std::invalid_argument("generator '" + gens_[i].name + "' must have arity >= 1");
            }
            if (gens_[i].name.empty()) {
                throw std::invalid_argument("generator with empty name");
            }
            if (i > 0 && gens_[i].precedence == gens_[i - 1].precedence) {
                throw std::invalid_argument("generators '" + gens_[i - 1].name + "' and '" + gens_[i].name +
                                            "' share a precedence value");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (gens_[j].name == gens_[i].name) {
                    throw std::invalid_argument("duplicate generator '" + gens_[i].name + "'");
                }
            }
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return gens_.size(); }
    [[nodiscard]] bool empty() const noexcept { return gens_.empty(); }
    [[nodiscard]] const Generator& operator[](GeneratorId id) const { return gens_.at(static_cast<std::size_t>(id)); }
    [[nodiscard]] int arity(GeneratorId id) const { return (*this)[id].arity; }
    [[nodiscard]] const std::string& name(GeneratorId id) const { return (*this)[id].name; }
    [[nodiscard]] const std::vector<Generator>& all() const noexcept { return gens_; }

    [[nodiscard]] std::optional<GeneratorId> find(std::string_view name) const {
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].name == name) {
                return static_cast<GeneratorId>(i);
            }
        }
        return std::nullopt;
    }

    [[nodiscard]] int min_arity() const {
        int m = 0;
        for (const auto& g : gens_) {
            m = (m == 0) ? g.arity : std::min(m, g.arity);
        }
        return m;
    }

    friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;

private:
    std::vector<Generator> gens_;
};

}  // namespace operad
