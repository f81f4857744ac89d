#include "stabfree/jsonio.hpp"

namespace stabfree {

json ring_to_json(const CoeffRingPtr& ring) {
    json j;
    j["variables"] = ring->variables();
    std::vector<std::string> rels;
    for (size_t i = 0; i < ring->nvars(); ++i)
        rels.push_back(to_string(ring->relation(i), ring->variables()[i]));
    j["relations"] = rels;
    j["characteristic"] = int_to_string(ring->characteristic());
    j["local"] = ring->is_local();
    j["domain"] = ring->is_integral_domain();
    return j;
}

CoeffRingPtr ring_from_json(const json& j) {
    std::vector<std::string> vars = j.at("variables").get<std::vector<std::string>>();
    std::vector<std::string> rel_texts = j.at("relations").get<std::vector<std::string>>();
    if (vars.size() != rel_texts.size()) throw ParseError("ring: variable/relation mismatch");
    std::vector<IntPoly> rels;
    for (size_t i = 0; i < vars.size(); ++i) rels.push_back(parse_intpoly(vars[i], rel_texts[i]));
    return CoeffRing::make(vars, rels, int_from_string(j.at("characteristic").get<std::string>()),
                           j.value("local", false), j.value("domain", false));
}

namespace {

json hom_images_to_json(const CoeffHom& h) {
    std::vector<std::string> images;
    for (const auto& img : h.images()) images.push_back(to_string(img));
    return images;
}

CoeffHom hom_from_json(const CoeffRingPtr& src, const CoeffRingPtr& dst, const json& j) {
    std::vector<CoeffElem> images;
    for (const auto& t : j) images.push_back(parse_coeff(dst, t.get<std::string>()));
    try {
        return CoeffHom(src, dst, std::move(images));
    } catch (const std::invalid_argument& e) {
        throw SquareError(std::string("hom reconstruction failed: ") + e.what());
    }
}

}  // namespace

json square_to_json(const MilnorSquare& sq) {
    json j;
    j["kind"] = sq.kind;
    j["m"] = sq.fibre.ngens;
    j["group_orders"] = sq.group_orders;
    j["subgroup_generator"] = sq.subgroup_generator;
    j["core"] = {{"variable", sq.fibre.coeff->variables()[sq.core.var_index]},
                 {"e", sq.core.e},
                 {"k", sq.core.k}};
    j["rings"] = {{"fibre", ring_to_json(sq.fibre.coeff)},
                  {"plus", ring_to_json(sq.plus.coeff)},
                  {"minus", ring_to_json(sq.minus.coeff)},
                  {"base", ring_to_json(sq.base.coeff)}};
    j["homs"] = {{"pi_plus", hom_images_to_json(sq.pi_plus)},
                 {"pi_minus", hom_images_to_json(sq.pi_minus)},
                 {"psi_plus", hom_images_to_json(sq.psi_plus)},
                 {"psi_minus", hom_images_to_json(sq.psi_minus)}};
    return j;
}

MilnorSquare square_from_json(const json& j) {
    unsigned m = j.at("m").get<unsigned>();
    CoeffRingPtr fr = ring_from_json(j.at("rings").at("fibre"));
    CoeffRingPtr pr = ring_from_json(j.at("rings").at("plus"));
    CoeffRingPtr mr = ring_from_json(j.at("rings").at("minus"));
    CoeffRingPtr br = ring_from_json(j.at("rings").at("base"));

    CoeffHom pi_plus = hom_from_json(fr, pr, j.at("homs").at("pi_plus"));
    CoeffHom pi_minus = hom_from_json(fr, mr, j.at("homs").at("pi_minus"));
    CoeffHom psi_plus = hom_from_json(pr, br, j.at("homs").at("psi_plus"));
    CoeffHom psi_minus = hom_from_json(mr, br, j.at("homs").at("psi_minus"));

    auto vidx = fr->var_index(j.at("core").at("variable").get<std::string>());
    if (!vidx) throw SquareError("core variable missing from the fibre ring");
    PullbackCore core;
    try {
        core = build_pullback_core(fr, *vidx, j.at("core").at("e").get<unsigned>(),
                                   j.at("core").at("k").get<unsigned>());
    } catch (const std::invalid_argument& e) {
        throw SquareError(std::string("core reconstruction failed: ") + e.what());
    }
    return MilnorSquare::make(GroupRing{fr, m}, GroupRing{pr, m}, GroupRing{mr, m},
                              GroupRing{br, m}, std::move(pi_plus), std::move(pi_minus),
                              std::move(psi_plus), std::move(psi_minus), std::move(core),
                              j.value("kind", "sigma"),
                              j.value("group_orders", std::vector<unsigned>{}),
                              j.value("subgroup_generator", std::vector<long long>{}));
}

json grelem_to_json(const GrElem& a) {
    json records = json::array();
    for (const auto& [w, c] : a.terms())
        records.push_back({{"word", to_string(w, a.ring().ngens)}, {"coeff", to_string(c)}});
    return records;
}

GrElem grelem_from_json(const GroupRing& ring, const json& j) {
    GrElem out = GrElem::zero(ring);
    for (const auto& rec : j) {
        Word w = parse_word(ring.ngens, rec.at("word").get<std::string>());
        CoeffElem c = parse_coeff(ring.coeff, rec.at("coeff").get<std::string>());
        out = out + GrElem::term(ring, w, c);
    }
    return out;
}

json factorlist_to_json(const FactorList& fl) {
    json j;
    json factors = json::array();
    for (const auto& f : fl.factors) {
        if (f.kind() == ElemFactor::Kind::Elementary) {
            factors.push_back(
                {{"kind", "E"}, {"i", f.i() + 1}, {"j", f.j() + 1}, {"a", to_string(f.coeff())}});
        } else {
            std::vector<std::string> d, dinv;
            for (const auto& e : f.diag()) d.push_back(to_string(e));
            for (const auto& e : f.diag_inv()) dinv.push_back(to_string(e));
            factors.push_back({{"kind", "D"}, {"entries", d}, {"inverses", dinv}});
        }
    }
    j["factors"] = factors;
    json rows = json::array();
    for (unsigned i = 0; i < fl.claimed.size(); ++i) {
        json row = json::array();
        for (unsigned jj = 0; jj < fl.claimed.size(); ++jj)
            row.push_back(to_string(fl.claimed.at(i, jj)));
        rows.push_back(row);
    }
    j["claimed_product"] = rows;
    return j;
}

FactorList factorlist_from_json(const json& j, const GroupRing& ring) {
    std::vector<ElemFactor> factors;
    for (const auto& f : j.at("factors")) {
        std::string kind = f.at("kind").get<std::string>();
        if (kind == "E") {
            unsigned i = f.at("i").get<unsigned>();
            unsigned jj = f.at("j").get<unsigned>();
            if (i < 1 || jj < 1) throw ParseError("factor indices are 1-based");
            factors.push_back(ElemFactor::elementary(
                i - 1, jj - 1, parse_grelem(ring, f.at("a").get<std::string>())));
        } else if (kind == "D") {
            std::vector<GrElem> d, dinv;
            for (const auto& t : f.at("entries")) d.push_back(parse_grelem(ring, t.get<std::string>()));
            for (const auto& t : f.at("inverses"))
                dinv.push_back(parse_grelem(ring, t.get<std::string>()));
            factors.push_back(ElemFactor::diagonal(std::move(d), std::move(dinv)));
        } else {
            throw ParseError("unknown factor kind '" + kind + "'");
        }
    }
    const json& rows = j.at("claimed_product");
    RMatrix claimed(ring, static_cast<unsigned>(rows.size()));
    for (unsigned i = 0; i < claimed.size(); ++i)
        for (unsigned jj = 0; jj < claimed.size(); ++jj)
            claimed.set(i, jj, parse_grelem(ring, rows.at(i).at(jj).get<std::string>()));
    return FactorList{std::move(factors), std::move(claimed)};
}

json trivialization_to_json(const TrivializationCert& cert) {
    json j;
    j["type"] = "stably-free-certificate";
    j["p"] = cert.p;
    j["m"] = cert.m;
    j["n"] = cert.n;
    j["square"] = square_to_json(cert.square);
    j["certificate"] = factorlist_to_json(cert.lifted);
    return j;
}

TrivializationCert trivialization_from_json(const json& j) {
    MilnorSquare sq = square_from_json(j.at("square"));
    FactorList fl = factorlist_from_json(j.at("certificate"), sq.plus);
    return TrivializationCert{std::move(sq), j.at("p").get<unsigned>(), j.at("m").get<unsigned>(),
                              j.at("n").get<unsigned>(), std::move(fl)};
}

json verdict_to_json(const DistinctnessVerdict& v, unsigned m) {
    json j;
    j["verdict"] = v.distinct ? "distinct" : "equivalent";
    json trace = json::array();
    for (const auto& step : v.trace)
        trace.push_back(
            {{"layer", step.layer}, {"constraint", step.constraint}, {"resolution", step.resolution}});
    j["trace"] = trace;
    if (v.witness) {
        j["witness"] = {{"gamma", to_string(v.witness->gamma)},
                        {"w", to_string(v.witness->w, m)},
                        {"v", to_string(v.witness->v, m)}};
    }
    return j;
}

}  // namespace stabfree
