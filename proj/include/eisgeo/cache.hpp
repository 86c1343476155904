#pragma once

#include "eisgeo/field.hpp"
#include "eisgeo/forms.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

namespace eisgeo {

inline constexpr int kCacheVersion = 1;

// JSON files keyed by dF (field and class group) and by (dF, p, r) (RM forms).
// A disabled cache computes everything afresh. Unreadable entries are reported
// on the warning stream and recomputed.
class Cache {
public:
    Cache() = default; // disabled
    explicit Cache(std::filesystem::path dir);

    // EISGEO_CACHE_DIR, else $HOME/.eisgeo-cache, else ./.eisgeo-cache
    static std::filesystem::path default_dir();

    bool enabled() const { return dir_.has_value(); }

    std::pair<FieldData, NarrowClassGroup> field(const Int& D, std::ostream& warn) const;
    // (form for +r, form for -r) per class
    std::vector<std::pair<QuadForm, QuadForm>> rm_forms(const FieldData& F, const NarrowClassGroup& G, long p, long r,
                                                        std::ostream& warn) const;

private:
    std::optional<std::filesystem::path> dir_;
};

} // namespace eisgeo
