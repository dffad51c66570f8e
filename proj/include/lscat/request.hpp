#pragma once

// Request dispatch behind the command-line tool: a command name, a JSON
// payload and options in, a JSON result document out.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "lscat/json_io.hpp"

namespace lscat {

inline constexpr int kSchemaVersion = 1;

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"snf",       "normalize",  "check",  "factor",
                                                "split",     "invariant",  "cohomology", "certify"};
    return names;
}

struct RequestOptions {
    std::size_t max_dim = 4;
    std::optional<Coefficients> coefficients;
    std::size_t rank_cap = kDefaultRankCap;
    bool verify = false;
    /// Name of the environment variable that set rank_cap, if any.
    std::optional<std::string> cap_source;
};

namespace detail {

using json::Json;

inline Json payload_object(const Json& payload, const char* key) {
    // {"key": {...}} or the object itself
    if (payload.is_object() && payload.contains(key))
        return payload.at(key);
    return payload;
}

inline void require(bool ok, const std::string& what) {
    if (!ok)
        throw Error(ErrorCode::VerificationFailed, what);
}

inline Json run_snf(const Json& payload, const RequestOptions& opt) {
    const IntMatrix a = json::decode_matrix(payload_object(payload, "matrix"));
    const SnfResult s = snf(a);
    Json out = json::encode_snf(a, s);
    if (opt.verify) {
        require(verify_snf(a, s), "PAQ = D check failed");
        try {
            require(minors_gcd_factors(a) == s.factors, "factors disagree with the gcd-of-minors oracle");
            out["minors_oracle"] = "agrees";
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DimensionTooLarge)
                throw;
            out["minors_oracle"] = "skipped";
        }
        out["verified"] = true;
    }
    return out;
}

inline Json run_normalize(const Json& payload, const RequestOptions& opt) {
    const GroupPresentation p = json::decode_presentation(payload_object(payload, "presentation"));
    const Normalization n = normalize(p);
    if (opt.verify) {
        for (std::size_t j = 0; j < p.relations.cols(); ++j)
            require(reduce_element(n.group, n.quotient.apply(p.relations.column(j))).coordinates ==
                        identity_element(n.group).coordinates,
                    "quotient does not kill relation " + std::to_string(j));
    }
    Json out{{"group", json::encode(n.group)},
             {"k", smith_normal_number(n.group)},
             {"quotient", json::encode(n.quotient)},
             {"lift", json::encode(n.lift)}};
    if (opt.verify)
        out["verified"] = true;
    return out;
}

inline Json run_check(const Json& payload, const RequestOptions&) {
    const Homomorphism h = json::decode_homomorphism(payload_object(payload, "homomorphism"));
    Json out{{"well_defined", true},
             {"homomorphism", json::encode(h)},
             {"epi", is_epimorphism(h)},
             {"kills_torsion", kills_torsion(h)},
             {"image", json::encode(image(h))}};
    if (h.domain().is_torsion_free())
        out["kernel_lattice"] = json::encode(kernel_lattice(h));
    return out;
}

inline Json run_factor(const Json& payload, const RequestOptions& opt) {
    const Homomorphism h = json::decode_homomorphism(payload_object(payload, "homomorphism"));
    const Factorization f = factor_through_lattice(h);
    Json out = json::encode(f);
    if (opt.verify) {
        require(f.composite() == h, "iota o psi o pi differs from the input map");
        require(is_epimorphism(f.pi), "pi is not surjective");
        out["verified"] = true;
    }
    return out;
}

inline Json run_split(const Json& payload, const RequestOptions& opt) {
    const Homomorphism h = json::decode_homomorphism(payload_object(payload, "homomorphism"));
    const Splitting sp = split(h);
    Json out = json::encode(sp);
    if (opt.verify) {
        require(is_unimodular(sp.basis_change), "basis change is not unimodular");
        require((h.matrix() * sp.basis_change) == sp.block_matrix(), "conjugated matrix is not block diagonal");
        require(reassemble(sp, h.codomain()) == h, "reassembly differs from the input map");
        out["verified"] = true;
    }
    return out;
}

inline Json run_invariant(const Json& payload, const RequestOptions& opt) {
    const Homomorphism h = json::decode_homomorphism(payload_object(payload, "homomorphism"));
    const InvariantResult r = cat_cd(h, opt.rank_cap);
    Json out = json::encode(r);
    if (opt.verify) {
        require(verify_certificate(r), "certificate failed re-validation");
        out["verified"] = true;
    }
    return out;
}

inline Json run_cohomology(const Json& payload, const RequestOptions& opt) {
    const FgAbelianGroup g = json::decode_group(payload_object(payload, "group"));
    const Coefficients coeff = opt.coefficients.value_or(Coefficients::integers());
    const auto groups = cohomology(g, coeff, opt.max_dim, opt.rank_cap);
    Json table = Json::array();
    for (const auto& c : groups)
        table.push_back(json::encode(c));
    Json out{{"group", json::encode(g)},
             {"coefficients", json::encode(coeff)},
             {"max_dim", opt.max_dim},
             {"cohomology", std::move(table)}};
    if (opt.verify) {
        require(Resolution(g, opt.max_dim + 1, opt.rank_cap).verify(), "resolution fails d o d = 0");
        out["verified"] = true;
    }
    return out;
}

inline Json run_certify(const Json& payload, const RequestOptions& opt) {
    const Homomorphism h = json::decode_homomorphism(payload_object(payload, "homomorphism"));
    std::size_t dimension = opt.max_dim;
    if (payload.is_object() && payload.contains("dimension"))
        dimension = json::decode_natural(payload.at("dimension"), "dimension");
    const Coefficients coeff = opt.coefficients.value_or(Coefficients::integers());
    const CohomologyWitness w =
        certify_cd_lower_bound(CoordinateMap::from_homomorphism(h), dimension, coeff, {}, opt.rank_cap);
    Json out = json::encode(w);
    if (opt.verify) {
        require(w.chain_map->verify(), "chain map squares do not commute");
        const auto again = induced_map(w.chain_map, dimension, coeff);
        const auto* w2 = std::get_if<CohomologyWitness>(&again);
        require(w2 && w2->induced_matrix == w.induced_matrix, "induced map changed on recomputation");
        out["verified"] = true;
    }
    return out;
}

} // namespace detail

/// Result document for one request; throws Error on failure.
inline json::Json run_request(std::string_view command, const json::Json& payload, const RequestOptions& opt) {
    json::Json out;
    if (command == "snf")
        out = detail::run_snf(payload, opt);
    else if (command == "normalize")
        out = detail::run_normalize(payload, opt);
    else if (command == "check")
        out = detail::run_check(payload, opt);
    else if (command == "factor")
        out = detail::run_factor(payload, opt);
    else if (command == "split")
        out = detail::run_split(payload, opt);
    else if (command == "invariant")
        out = detail::run_invariant(payload, opt);
    else if (command == "cohomology")
        out = detail::run_cohomology(payload, opt);
    else if (command == "certify")
        out = detail::run_certify(payload, opt);
    else
        throw Error(ErrorCode::Malformed, "unknown command \"" + std::string(command) + "\"");
    if (opt.cap_source)
        out["resource_cap"] = json::Json{{"rank", opt.rank_cap}, {"source", *opt.cap_source}};
    return out;
}

struct Outcome {
    json::Json document;
    int exit_code = 0;
};

inline int exit_code_for(const Error& e) { return is_input_error(e.code()) ? 1 : 2; }

inline Outcome run_guarded(std::string_view command, const json::Json& payload, const RequestOptions& opt) {
    try {
        return {run_request(command, payload, opt), 0};
    } catch (const Error& e) {
        return {json::encode_error(e), exit_code_for(e)};
    } catch (const json::Json::exception& e) {
        return {json::encode_error(Error(ErrorCode::Malformed, e.what())), 1};
    }
}

/// One batch entry is either a payload for `command` or a full request
/// {"command", "payload", "options"} whose fields override the defaults.
inline Outcome run_batch_entry(std::string_view command, const json::Json& entry, const RequestOptions& defaults) {
    if (!(entry.is_object() && entry.contains("command")))
        return run_guarded(command, entry, defaults);
    try {
        RequestOptions opt = defaults;
        const auto& cmd = entry.at("command");
        if (!cmd.is_string())
            throw Error(ErrorCode::Malformed, "request.command must be a string");
        if (entry.contains("options")) {
            const auto& o = entry.at("options");
            if (!o.is_object())
                throw Error(ErrorCode::Malformed, "request.options must be an object");
            if (o.contains("max_dim"))
                opt.max_dim = json::decode_natural(o.at("max_dim"), "options.max_dim");
            if (o.contains("coefficients"))
                opt.coefficients = json::decode_coefficients(o.at("coefficients"), "options.coefficients");
            if (o.contains("cap") && !opt.cap_source)
                opt.rank_cap = json::decode_natural(o.at("cap"), "options.cap");
            if (o.contains("verify"))
                opt.verify = o.at("verify").get<bool>();
        }
        const json::Json payload = entry.contains("payload") ? entry.at("payload") : json::Json::object();
        return run_guarded(cmd.get<std::string>(), payload, opt);
    } catch (const Error& e) {
        return {json::encode_error(e), exit_code_for(e)};
    } catch (const json::Json::exception& e) {
        return {json::encode_error(Error(ErrorCode::Malformed, e.what())), 1};
    }
}

/// Runs entries on up to `jobs` threads; results keep input order. The
/// exit code is the largest over all entries.
inline Outcome run_batch(std::string_view command, const json::Json& entries, const RequestOptions& opt,
                         std::size_t jobs = 1) {
    std::vector<Outcome> results(entries.size());
    jobs = std::max<std::size_t>(1, std::min(jobs, entries.size()));
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w)
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < entries.size(); i += jobs)
                results[i] = run_batch_entry(command, entries[i], opt);
        });
    for (auto& t : workers)
        t.join();
    Outcome out{json::Json::array(), 0};
    for (auto& r : results) {
        out.exit_code = std::max(out.exit_code, r.exit_code);
        out.document.push_back(std::move(r.document));
    }
    return out;
}

} // namespace lscat
