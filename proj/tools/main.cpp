#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "stabfree/jsonio.hpp"
#include "stabfree/random.hpp"

using namespace stabfree;

namespace {

// exit codes: 0 success, 1 usage/validation, 2 verification failure,
// 3 internal inconsistency

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void emit(const json& j, const std::string& out_path, bool text_format) {
    std::string payload = text_format ? j.dump(2) : j.dump();
    if (out_path.empty()) {
        std::cout << payload << "\n";
    } else {
        std::ofstream os(out_path);
        if (!os) throw UsageError("cannot open output file " + out_path);
        os << payload << "\n";
    }
}

json load_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot open input file " + path);
    return json::parse(is);
}

void require_prime_flag(unsigned p) {
    if (!is_prime(p)) throw UsageError("--p must be a prime");
}

std::vector<unsigned> parse_uint_list(const std::string& s) {
    std::vector<unsigned> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(static_cast<unsigned>(std::stoul(tok)));
    return out;
}

std::vector<long long> parse_int_list(const std::string& s) {
    std::vector<long long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
    return out;
}

GroupRing ring_from_preset(const std::string& spec, unsigned m) {
    if (spec == "Z") return GroupRing{CoeffRing::make({}, {}, 0, false, true), m};
    if (spec.rfind("zeta:", 0) == 0) {
        unsigned d = static_cast<unsigned>(std::stoul(spec.substr(5)));
        return GroupRing{CoeffRing::make({"x"}, {cyclotomic_poly(d)}, 0, false, true), m};
    }
    if (spec.rfind("cyclic:", 0) == 0) {
        unsigned nn = static_cast<unsigned>(std::stoul(spec.substr(7)));
        return GroupRing{CoeffRing::make({"x"}, {IntPoly::cyclic(nn)}, 0), m};
    }
    if (spec.rfind("fpcp:", 0) == 0) {
        unsigned p = static_cast<unsigned>(std::stoul(spec.substr(5)));
        if (!is_prime(p)) throw UsageError("fpcp:<p> needs a prime");
        return fp_cp_group_ring(p, m);
    }
    throw UsageError("unknown coefficient ring '" + spec +
                     "' (expected Z, zeta:<d>, cyclic:<n> or fpcp:<p>)");
}

int cmd_check_square(unsigned p, unsigned m, const std::string& which, const std::string& g_list,
                     const std::string& h_list, unsigned samples, unsigned long seed,
                     const std::string& in_path, const std::string& out_path, bool text_format) {
    MilnorSquare sq = [&] {
        if (!in_path.empty()) return square_from_json(load_json(in_path));
        if (which == "sigma")
            return build_sigma_square(parse_uint_list(g_list), parse_int_list(h_list), m);
        require_prime_flag(p);
        return build_square(which, p, m);
    }();

    ExactnessReport rep = check_exactness(sq, samples, seed);
    json j;
    j["square"] = square_to_json(sq);
    j["samples"] = rep.samples;
    j["failures"] = rep.failures;
    j["counterexamples"] = rep.counterexamples;
    j["ok"] = rep.ok();
    emit(j, out_path, text_format);
    return rep.ok() ? 0 : 2;
}

int cmd_gen_module(unsigned p, unsigned m, unsigned n, const std::string& out_path,
                   bool text_format) {
    require_prime_flag(p);
    if (n < 1) throw UsageError("--n must be >= 1");
    GroupRing corner = fp_cp_group_ring(p, m);
    GrElem delta = unit_commutator({p, m, n}, corner);
    YAdicExpansion layers = y_adic_expand(delta);

    CoeffElem y = radical_generator(corner.coeff);
    GrElem alpha = GrElem::one(corner) + GrElem::term(corner, Word::generator(1), y);
    GrElem alpha_inv = *inverse_unipotent(alpha);

    json j;
    j["p"] = p;
    j["m"] = m;
    j["n"] = n;
    j["delta"] = to_string(delta);
    j["delta_terms"] = grelem_to_json(delta);
    std::vector<std::string> layer_texts;
    for (const auto& layer : layers.layers) layer_texts.push_back(to_string(layer));
    j["y_layers"] = layer_texts;
    j["commutator_witness"] = {{"alpha", to_string(alpha)},
                               {"alpha_inv", to_string(alpha_inv)},
                               {"sigma", to_string(Word::generator(0).pow(n), m)}};
    emit(j, out_path, text_format);
    return 0;
}

int cmd_certify(unsigned p, unsigned m, unsigned n, unsigned n2, unsigned len_bound,
                const std::string& out_path, bool text_format) {
    require_prime_flag(p);
    if (n < 1 || n2 < 1) throw UsageError("indices must be >= 1");
    DistinctnessVerdict verdict = certify_distinct(p, m, n, n2);
    BruteForceReport brute = brute_force_check(p, m, n, n2, len_bound);

    bool agree = verdict.distinct == brute.hits.empty();
    json j = verdict_to_json(verdict, m);
    j["p"] = p;
    j["m"] = m;
    j["n"] = n;
    j["n2"] = n2;
    json hits = json::array();
    for (const auto& h : brute.hits)
        hits.push_back({{"gamma", to_string(h.gamma)}, {"w", to_string(h.w, m)}});
    j["brute_force"] = {{"len_bound", len_bound}, {"candidates", brute.candidates}, {"hits", hits}};
    j["agreement"] = agree;
    emit(j, out_path, text_format);
    if (!agree) {
        std::cerr << "internal inconsistency: decision and brute force disagree\n";
        return 3;
    }
    return 0;
}

int cmd_trivialize(unsigned p, unsigned m, unsigned n, const std::string& out_path,
                   bool text_format) {
    require_prime_flag(p);
    if (n < 1) throw UsageError("--n must be >= 1");
    TrivializationCert cert = trivialize(p, m, n);
    emit(trivialization_to_json(cert), out_path, text_format);
    return 0;
}

int cmd_verify_certificate(const std::string& in_path) {
    try {
        json j = load_json(in_path);
        std::string type = j.value("type", "");
        if (type == "stably-free-certificate") {
            TrivializationCert cert = trivialization_from_json(j);
            verify_trivialization(cert);
            std::cout << "certificate ok: " << cert.lifted.factors.size()
                      << " elementary factors, psi_plus image is diag(delta_" << cert.n
                      << ", 1)\n";
            return 0;
        }
        if (type == "factor-certificate") {
            GroupRing ring{ring_from_json(j.at("ring")), j.at("m").get<unsigned>()};
            FactorList fl = factorlist_from_json(j.at("certificate"), ring);
            if (!fl.verify()) throw VerificationError("factor product differs from claim");
            std::cout << "certificate ok: " << fl.factors.size() << " factors\n";
            return 0;
        }
        throw VerificationError("unknown certificate type '" + type + "'");
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 2;
    }
}

int cmd_family(unsigned p, unsigned m, unsigned count, const std::string& out_path,
               bool text_format) {
    require_prime_flag(p);
    if (count < 1) throw UsageError("--N must be >= 1");
    GroupRing corner = fp_cp_group_ring(p, m);
    json j;
    j["p"] = p;
    j["m"] = m;
    j["N"] = count;
    std::vector<std::string> deltas;
    for (unsigned k = 1; k <= count; ++k)
        deltas.push_back(to_string(unit_commutator({p, m, k}, corner)));
    j["delta"] = deltas;

    bool inconsistent = false;
    json matrix = json::array();
    for (unsigned a = 1; a <= count; ++a) {
        json row = json::array();
        for (unsigned b = 1; b <= count; ++b) {
            if (a == b) {
                row.push_back("equal");
                continue;
            }
            DistinctnessVerdict v = certify_distinct(p, m, a, b);
            row.push_back(v.distinct ? "distinct" : "equivalent");
            if (!v.distinct) inconsistent = true;
        }
        matrix.push_back(row);
    }
    j["pairwise"] = matrix;
    emit(j, out_path, text_format);
    if (inconsistent) {
        std::cerr << "internal inconsistency: distinct indices certified equivalent\n";
        return 3;
    }
    return 0;
}

int cmd_unit_search(const std::string& coeff_spec, unsigned m, unsigned support_bound,
                    unsigned height_bound, unsigned len_bound, const std::string& out_path,
                    bool text_format) {
    GroupRing ring = ring_from_preset(coeff_spec, m);
    UnitSearchResult res = unit_search(ring, support_bound, height_bound, len_bound);
    json j;
    j["coeff"] = coeff_spec;
    j["m"] = m;
    j["support_bound"] = support_bound;
    j["height_bound"] = height_bound;
    j["len_bound"] = len_bound;
    j["candidates"] = res.candidates;
    json units = json::array();
    for (const auto& [u, v] : res.unit_pairs)
        units.push_back({{"u", to_string(u)}, {"inverse", to_string(v)}});
    j["units"] = units;
    std::vector<std::string> nontrivial;
    for (const auto& u : res.nontrivial_units) nontrivial.push_back(to_string(u));
    j["nontrivial_units"] = nontrivial;
    emit(j, out_path, text_format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Milnor-square pipeline: squares, unit commutators, distinctness "
                 "certificates and elementary-matrix trivializations"};
    app.require_subcommand(1);

    unsigned p = 2, m = 2, n = 1, n2 = 1, count = 5;
    unsigned samples = 200, len_bound = 4, support_bound = 2, height_bound = 2;
    unsigned long seed = 12345;
    std::string which = "A", g_list, h_list, in_path, out_path, format = "json";
    std::string coeff_spec = "Z";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write the report to this file");
        cmd->add_option("--format", format, "json or text")
            ->check(CLI::IsMember({"json", "text"}));
    };

    CLI::App* ccheck = app.add_subcommand("check-square", "randomized exactness check");
    ccheck->add_option("--p", p, "prime");
    ccheck->add_option("--m", m, "free group rank");
    ccheck->add_option("--which", which, "A, B or sigma")
        ->check(CLI::IsMember({"A", "B", "sigma"}));
    ccheck->add_option("--G", g_list, "invariant factors, e.g. 4 or 2,2 (sigma)");
    ccheck->add_option("--H", h_list, "subgroup generator exponents (sigma)");
    ccheck->add_option("--samples", samples, "sample count");
    ccheck->add_option("--seed", seed, "rng seed");
    ccheck->add_option("--in", in_path, "square descriptor JSON to check");
    add_common(ccheck);

    CLI::App* cgen = app.add_subcommand("gen-module", "unit commutator and its layers");
    cgen->add_option("--p", p)->required();
    cgen->add_option("--m", m);
    cgen->add_option("--n", n)->required();
    add_common(cgen);

    CLI::App* ccert = app.add_subcommand("certify", "distinctness decision with brute cross-check");
    ccert->add_option("--p", p)->required();
    ccert->add_option("--m", m);
    ccert->add_option("--n", n)->required();
    ccert->add_option("--n2", n2)->required();
    ccert->add_option("--len-bound", len_bound, "brute-force word length bound");
    add_common(ccert);

    CLI::App* ctriv = app.add_subcommand("trivialize", "emit a stably-free certificate");
    ctriv->add_option("--p", p)->required();
    ctriv->add_option("--m", m);
    ctriv->add_option("--n", n)->required();
    add_common(ctriv);

    CLI::App* cver = app.add_subcommand("verify-certificate", "re-check an emitted certificate");
    cver->add_option("--in", in_path, "certificate file")->required();

    CLI::App* cfam = app.add_subcommand("family", "pairwise distinctness matrix");
    cfam->add_option("--p", p)->required();
    cfam->add_option("--m", m);
    cfam->add_option("--N", count)->required();
    add_common(cfam);

    CLI::App* cunit = app.add_subcommand("unit-search", "bounded exhaustive unit search");
    cunit->add_option("--coeff", coeff_spec, "Z, zeta:<d>, cyclic:<n> or fpcp:<p>");
    cunit->add_option("--m", m, "free group rank (0 for coefficients only)");
    cunit->add_option("--support-bound", support_bound);
    cunit->add_option("--height-bound", height_bound);
    cunit->add_option("--len-bound", len_bound);
    add_common(cunit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    bool text_format = format == "text";
    try {
        if (ccheck->parsed())
            return cmd_check_square(p, m, which, g_list, h_list, samples, seed, in_path, out_path,
                                    text_format);
        if (cgen->parsed()) return cmd_gen_module(p, m, n, out_path, text_format);
        if (ccert->parsed()) return cmd_certify(p, m, n, n2, len_bound, out_path, text_format);
        if (ctriv->parsed()) return cmd_trivialize(p, m, n, out_path, text_format);
        if (cver->parsed()) return cmd_verify_certificate(in_path);
        if (cfam->parsed()) return cmd_family(p, m, count, out_path, text_format);
        if (cunit->parsed())
            return cmd_unit_search(coeff_spec, m, support_bound, height_bound, len_bound, out_path,
                                   text_format);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const SquareError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 2;
    } catch (const VerificationError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
