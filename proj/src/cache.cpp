#include "eisgeo/cache.hpp"
#include "eisgeo/geodesic.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace eisgeo {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json form_json(const QuadForm& f) { return json::array({f.a.get_str(), f.b.get_str(), f.c.get_str()}); }

QuadForm form_from(const json& j) {
    return {Int(j.at(0).get<std::string>()), Int(j.at(1).get<std::string>()), Int(j.at(2).get<std::string>())};
}

std::optional<json> read_entry(const fs::path& file, std::ostream& warn) {
    std::ifstream in(file);
    if (!in) return std::nullopt;
    try {
        json j = json::parse(in);
        if (j.at("version").get<int>() != kCacheVersion) {
            warn << "warning: cache entry " << file << " has another version, recomputing\n";
            return std::nullopt;
        }
        return j;
    } catch (const std::exception& e) {
        warn << "warning: cache entry " << file << " is unreadable (" << e.what() << "), recomputing\n";
        return std::nullopt;
    }
}

void write_entry(const fs::path& file, const json& j, std::ostream& warn) {
    std::error_code ec;
    fs::create_directories(file.parent_path(), ec);
    fs::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) {
            warn << "warning: cannot write cache entry " << file << "\n";
            return;
        }
        out << j.dump(1) << "\n";
    }
    fs::rename(tmp, file, ec);
    if (ec) warn << "warning: cannot write cache entry " << file << ": " << ec.message() << "\n";
}

json field_json(const FieldData& F, const NarrowClassGroup& G) {
    json reps = json::array();
    for (const QuadForm& f : G.class_reps) reps.push_back(form_json(f));
    return {{"version", kCacheVersion},
            {"D", F.D.get_str()},
            {"dF", F.dF.get_str()},
            {"eps", {F.eps.u().get_str(), F.eps.v().get_str(), F.eps.w().get_str(), F.eps.disc().get_str()}},
            {"unit_norm", F.unit_norm},
            {"class_reps", reps},
            {"table", G.table},
            {"sqrt_class", G.class_of_principal_sqrt_dF}};
}

std::pair<FieldData, NarrowClassGroup> field_from(const json& j, const Int& D) {
    if (Int(j.at("D").get<std::string>()) != D) throw std::runtime_error("entry belongs to another field");
    FieldData F;
    F.D = D;
    F.dF = Int(j.at("dF").get<std::string>());
    if (F.dF != (mod(D, Int(4)) == 1 ? D : 4 * D)) throw std::runtime_error("wrong discriminant");
    F.lambda = QuadIrr(F.dF, 1, 2, F.dF);
    const json& e = j.at("eps");
    F.eps = QuadIrr(Int(e.at(0).get<std::string>()), Int(e.at(1).get<std::string>()), Int(e.at(2).get<std::string>()),
                    Int(e.at(3).get<std::string>()));
    if (F.eps.disc() != QuadIrr(F.dF, 1, 1, F.dF).disc()) throw std::runtime_error("unit in another field");
    F.unit_norm = j.at("unit_norm").get<int>();
    Rational n = F.eps.norm();
    if (n != F.unit_norm || (F.unit_norm != 1 && F.unit_norm != -1) || F.eps.sign() <= 0)
        throw std::runtime_error("stored unit is not a unit of the stated norm");
    F.eps_plus = F.unit_norm == 1 ? F.eps : F.eps * F.eps;
    std::vector<QuadForm> reps;
    for (const json& f : j.at("class_reps")) reps.push_back(form_from(f));
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    NarrowClassGroup G = NarrowClassGroup::from_parts(F.dF, std::move(reps), std::move(table), j.at("sqrt_class").get<int>());
    return {std::move(F), std::move(G)};
}

} // namespace

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {}

fs::path Cache::default_dir() {
    if (const char* d = std::getenv("EISGEO_CACHE_DIR"); d && *d) return d;
    if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".eisgeo-cache";
    return ".eisgeo-cache";
}

std::pair<FieldData, NarrowClassGroup> Cache::field(const Int& D, std::ostream& warn) const {
    auto compute = [&] {
        FieldData F = build_field(D);
        NarrowClassGroup G = narrow_class_group(F);
        return std::pair{std::move(F), std::move(G)};
    };
    if (!dir_) return compute();
    fs::path file = *dir_ / ("field_" + D.get_str() + ".json");
    if (auto j = read_entry(file, warn)) {
        try {
            return field_from(*j, D);
        } catch (const std::exception& e) {
            warn << "warning: cache entry " << file << " is inconsistent (" << e.what() << "), recomputing\n";
        }
    }
    auto result = compute();
    write_entry(file, field_json(result.first, result.second), warn);
    return result;
}

std::vector<std::pair<QuadForm, QuadForm>> Cache::rm_forms(const FieldData& F, const NarrowClassGroup& G, long p, long r,
                                                           std::ostream& warn) const {
    auto compute = [&] {
        std::vector<std::pair<QuadForm, QuadForm>> out;
        for (int c = 0; c < G.size(); ++c) {
            RmPointPair pr = rm_point_pair(F, G, c, p, r);
            out.emplace_back(pr.point_plus.form, pr.point_minus.form);
        }
        return out;
    };
    if (!dir_) return compute();
    fs::path file = *dir_ / ("rm_" + F.dF.get_str() + "_" + std::to_string(p) + "_" + std::to_string(r) + ".json");
    if (auto j = read_entry(file, warn)) {
        try {
            std::vector<std::pair<QuadForm, QuadForm>> out;
            for (const json& e : j->at("forms")) out.emplace_back(form_from(e.at(0)), form_from(e.at(1)));
            if (static_cast<int>(out.size()) != G.size()) throw std::runtime_error("wrong number of classes");
            Int P(p);
            for (int c = 0; c < G.size(); ++c) {
                const auto& [fp, fm] = out[c];
                if (G.class_of(fp) != c || G.class_of(fm) != c || mod(fp.a, P) != 0 || mod(fm.a, P) != 0 ||
                    mod(fp.b + r, P) != 0 || mod(fm.b - r, P) != 0)
                    throw std::runtime_error("stored form does not match its class or level");
            }
            return out;
        } catch (const std::exception& e) {
            warn << "warning: cache entry " << file << " is inconsistent (" << e.what() << "), recomputing\n";
        }
    }
    auto out = compute();
    json forms = json::array();
    for (const auto& [fp, fm] : out) forms.push_back(json::array({form_json(fp), form_json(fm)}));
    write_entry(file, {{"version", kCacheVersion}, {"dF", F.dF.get_str()}, {"p", p}, {"r", r}, {"forms", forms}}, warn);
    return out;
}

} // namespace eisgeo
