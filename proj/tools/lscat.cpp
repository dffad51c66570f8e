// lscat: command-line front end for the lscat library.
//
//   lscat <command> [--input FILE|-] [--output json|text] [--max-dim N]
//         [--coeff p|Z] [--cap N] [--verify] [--jobs N]
//
// Exit status: 0 success, 1 malformed input, 2 domain error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lscat/request.hpp"

#ifndef LSCAT_VERSION
#define LSCAT_VERSION "dev"
#endif

namespace {

using lscat::json::Json;

constexpr const char* kCapVariable = "LSCAT_RANK_CAP";

std::string read_input(const std::string& path) {
    if (path == "-")
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw lscat::Error(lscat::ErrorCode::Malformed, "cannot open input file " + path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string scalar(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string group_text(const Json& g) {
    const auto r = g.at("free_rank").get<std::size_t>();
    std::string out;
    if (r == 1)
        out = "Z";
    else if (r > 1)
        out = "Z^" + std::to_string(r);
    for (const auto& t : g.at("torsion"))
        out += (out.empty() ? "" : " x ") + std::string("Z_") + scalar(t);
    return out.empty() ? "0" : out;
}

std::string matrix_text(const Json& m, const std::string& indent = "  ") {
    std::ostringstream os;
    const auto& data = m.at("data");
    if (data.empty() || m.at("cols").get<std::size_t>() == 0)
        return indent + "(" + std::to_string(m.at("rows").get<std::size_t>()) + "x" +
               std::to_string(m.at("cols").get<std::size_t>()) + ")\n";
    std::vector<std::size_t> width(m.at("cols").get<std::size_t>(), 1);
    for (const auto& row : data)
        for (std::size_t j = 0; j < row.size(); ++j)
            width[j] = std::max(width[j], scalar(row[j]).size());
    for (const auto& row : data) {
        os << indent << "[";
        for (std::size_t j = 0; j < row.size(); ++j) {
            const std::string s = scalar(row[j]);
            os << (j ? " " : "") << std::string(width[j] - s.size(), ' ') << s;
        }
        os << "]\n";
    }
    return os.str();
}

std::string list_text(const Json& a) {
    std::string out = "[";
    for (std::size_t i = 0; i < a.size(); ++i)
        out += (i ? ", " : "") + scalar(a[i]);
    return out + "]";
}

std::string coeff_text(const Json& c) { return c.is_string() ? c.get<std::string>() : "Z_" + c.dump(); }

std::string witness_text(const Json& w) {
    std::ostringstream os;
    os << "degree " << w.at("dimension") << " with " << coeff_text(w.at("coefficients")) << " coefficients: H^"
       << w.at("dimension") << " = " << group_text(w.at("source_cohomology").at("group")) << " -> "
       << group_text(w.at("target_cohomology").at("group")) << "\n"
       << "induced matrix:\n"
       << matrix_text(w.at("induced_matrix")) << "nonzero entry " << list_text(w.at("nonzero_entry")) << "\n";
    return os.str();
}

std::string render_text(const std::string& command, const Json& r) {
    std::ostringstream os;
    if (r.contains("error")) {
        os << "error: " << r.at("error").get<std::string>() << ": " << r.at("detail").get<std::string>() << "\n";
        return os.str();
    }
    if (command == "snf") {
        os << "invariant factors " << list_text(r.at("factors")) << "\nP =\n"
           << matrix_text(r.at("P")) << "D =\n"
           << matrix_text(r.at("D")) << "Q =\n"
           << matrix_text(r.at("Q"));
        if (r.contains("minors_oracle"))
            os << "verified (minors oracle " << r.at("minors_oracle").get<std::string>() << ")\n";
    } else if (command == "normalize") {
        os << group_text(r.at("group")) << "  (k = " << r.at("k") << ")\nquotient =\n"
           << matrix_text(r.at("quotient")) << "lift =\n"
           << matrix_text(r.at("lift"));
    } else if (command == "check") {
        const auto& h = r.at("homomorphism");
        os << group_text(h.at("domain")) << " -> " << group_text(h.at("codomain")) << " is well defined\n"
           << "epimorphism: " << (r.at("epi").get<bool>() ? "yes" : "no") << "\n"
           << "kills torsion: " << (r.at("kills_torsion").get<bool>() ? "yes" : "no") << "\n"
           << "image: " << group_text(r.at("image")) << "\n";
        if (r.contains("kernel_lattice"))
            os << "kernel basis =\n" << matrix_text(r.at("kernel_lattice"));
    } else if (command == "factor") {
        os << "k = " << r.at("k") << ", factors " << list_text(r.at("factors")) << "\npi =\n"
           << matrix_text(r.at("pi").at("matrix")) << "iota =\n"
           << matrix_text(r.at("iota").at("matrix"));
    } else if (command == "split") {
        os << "m = " << r.at("m") << "\nbasis change =\n"
           << matrix_text(r.at("basis_change")) << "psi1 =\n"
           << matrix_text(r.at("psi1").at("matrix")) << "psi2 =\n"
           << matrix_text(r.at("psi2").at("matrix"));
    } else if (command == "invariant") {
        os << "cat = cd = " << r.at("value") << "  (rank " << r.at("m") << " + k " << r.at("k") << ")\n";
        if (r.at("via_image").get<bool>())
            os << "computed for the corestriction onto the image\n";
        os << "upper bound:\n";
        for (const auto& s : r.at("upper_chain")) {
            os << "  " << s.at("tag").get<std::string>();
            if (!s.at("bound").is_null())
                os << " (<= " << s.at("bound") << ")";
            os << ": " << s.at("claim").get<std::string>() << "\n";
        }
        os << "lower bound witness: " << witness_text(r.at("lower_witness"));
    } else if (command == "cohomology") {
        for (const auto& c : r.at("cohomology"))
            os << "H^" << c.at("degree") << "(" << group_text(r.at("group")) << "; "
               << coeff_text(r.at("coefficients")) << ") = " << group_text(c.at("group")) << "\n";
    } else if (command == "certify") {
        os << "cd >= " << r.at("dimension") << "\n" << witness_text(r);
    }
    if (r.contains("verified"))
        os << "all checks passed\n";
    if (r.contains("resource_cap"))
        os << "rank cap " << r.at("resource_cap").at("rank") << " from "
           << r.at("resource_cap").at("source").get<std::string>() << "\n";
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact invariants of homomorphisms between finitely generated abelian groups"};
    app.set_version_flag("--version", std::string("lscat ") + LSCAT_VERSION + " (schema " +
                                          std::to_string(lscat::kSchemaVersion) + ")");
    app.require_subcommand(1);

    std::string input = "-";
    std::string output = "text";
    std::size_t max_dim = 4;
    std::string coeff;
    std::optional<std::size_t> cap;
    bool verify = false;
    std::size_t jobs = 1;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"snf", "Smith normal form with transformation matrices"},
        {"normalize", "canonical invariant-factor form of a presentation"},
        {"check", "validate a homomorphism and report epi / torsion / image"},
        {"factor", "factor an epimorphism onto a finite group through a lattice"},
        {"split", "split an epimorphism into free and torsion parts"},
        {"invariant", "cat = cd of a homomorphism with a full certificate"},
        {"cohomology", "cohomology table of a group"},
        {"certify", "nonzero induced map certifying a cd lower bound"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--input,-i", input, "input file, - for standard input")->capture_default_str();
        sub->add_option("--output,-o", output, "output format")
            ->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
        sub->add_option("--max-dim", max_dim, "highest cohomological degree")->capture_default_str();
        sub->add_option("--coeff", coeff, "coefficients: a prime p or Z");
        sub->add_option("--cap", cap, "cap on resolution ranks");
        sub->add_flag("--verify", verify, "re-check the result before printing");
        sub->add_option("--jobs,-j", jobs, "worker threads for batch input")->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    const bool as_json = output == "json";

    auto fail = [&](const lscat::Error& e) {
        if (as_json)
            std::cout << lscat::json::encode_error(e).dump(2) << "\n";
        else
            std::cerr << render_text(command, lscat::json::encode_error(e));
        return lscat::exit_code_for(e);
    };

    lscat::RequestOptions opt;
    opt.max_dim = max_dim;
    opt.verify = verify;
    Json document;
    try {
        if (!coeff.empty()) {
            if (coeff == "Z")
                opt.coefficients = lscat::Coefficients::integers();
            else
                opt.coefficients = lscat::json::decode_coefficients(Json(coeff), "--coeff");
        }
        if (cap)
            opt.rank_cap = *cap;
        if (const char* env = std::getenv(kCapVariable)) {
            opt.rank_cap = lscat::json::decode_natural(Json(std::string(env)), kCapVariable);
            opt.cap_source = kCapVariable;
        }
        const std::string text = read_input(input);
        document = Json::parse(text);
    } catch (const lscat::Error& e) {
        return fail(e);
    } catch (const Json::exception& e) {
        return fail(lscat::Error(lscat::ErrorCode::Malformed, std::string("invalid JSON: ") + e.what()));
    }

    if (document.is_array()) {
        const lscat::Outcome out = lscat::run_batch(command, document, opt, jobs);
        if (as_json) {
            std::cout << out.document.dump(2) << "\n";
        } else {
            for (std::size_t i = 0; i < out.document.size(); ++i) {
                const Json& entry = document[i];
                const std::string cmd = entry.is_object() && entry.contains("command") && entry["command"].is_string()
                                            ? entry["command"].get<std::string>()
                                            : command;
                std::cout << "[" << i << "] " << cmd << "\n" << render_text(cmd, out.document[i]);
            }
        }
        return out.exit_code;
    }

    const lscat::Outcome out = lscat::run_guarded(command, document, opt);
    if (out.exit_code != 0) {
        if (as_json)
            std::cout << out.document.dump(2) << "\n";
        else
            std::cerr << render_text(command, out.document);
        return out.exit_code;
    }
    if (as_json)
        std::cout << out.document.dump(2) << "\n";
    else
        std::cout << render_text(command, out.document);
    return 0;
}
