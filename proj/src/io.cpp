#include "adelion/io.hpp"

namespace adelion {

json to_json(const Rat& q) {
    return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(Int(std::to_string(j.get<long long>())));
    if (j.is_string()) {
        Rat q(j.get<std::string>());
        q.canonicalize();
        return q;
    }
    Int num(j.at("num").get<std::string>());
    Int den(j.at("den").get<std::string>());
    return make_rat(num, den);
}

json to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

json to_json(const Ball& b) {
    return json{{"p", b.p}, {"center", to_json(b.center)}, {"gamma", b.radius_exp}};
}

Ball ball_from_json(const json& j) {
    if (j.at("p").is_string())
        throw std::invalid_argument("ball: the real place carries no p-adic balls");
    return Ball::make(j.at("p").get<Prime>(), rat_from_json(j.at("center")),
                      j.at("gamma").get<long>());
}

json to_json(const LocalFunction& f) {
    json terms = json::array();
    for (const auto& t : f.terms()) {
        terms.push_back(json{{"amp", to_json(t.amp)},
                             {"phase", to_json(t.phase.turns())},
                             {"freq", to_json(t.freq)},
                             {"ball", to_json(t.ball)}});
    }
    return json{{"p", f.prime()}, {"terms", terms}};
}

LocalFunction local_from_json(const json& j) {
    Prime p = j.at("p").get<Prime>();
    std::vector<CharBallTerm> terms;
    for (const auto& tj : j.at("terms")) {
        CharBallTerm t;
        t.amp = complex_from_json(tj.at("amp"));
        if (tj.contains("phase")) t.phase = UnitPhase(rat_from_json(tj.at("phase")));
        if (tj.contains("freq")) t.freq = rat_from_json(tj.at("freq"));
        t.ball = ball_from_json(tj.at("ball"));
        terms.push_back(std::move(t));
    }
    return LocalFunction::from_terms(p, std::move(terms));
}

json to_json(const DyadicStep& f) {
    json pieces = json::array();
    for (const auto& pc : f.pieces())
        pieces.push_back(json{{"j", f.level()}, {"n", pc.offset}, {"amp", to_json(pc.amp)}});
    return json{{"pieces", pieces}};
}

DyadicStep dyadic_from_json(const json& j) {
    DyadicStep f = DyadicStep::zero();
    for (const auto& pj : j.at("pieces")) {
        f = f + DyadicStep::piece(pj.at("j").get<long>(), pj.at("n").get<long long>(),
                                  complex_from_json(pj.at("amp")));
    }
    return f;
}

json to_json(const AdelicTensor& t) {
    json locals = json::object();
    for (const auto& [p, f] : t.locals()) locals[std::to_string(p)] = to_json(f);
    json out{{"locals", locals}};
    out["real"] = t.has_real() ? to_json(t.real_factor()) : json(nullptr);
    return out;
}

AdelicTensor tensor_from_json(const json& j) {
    std::optional<DyadicStep> real;
    if (j.contains("real") && !j.at("real").is_null()) real = dyadic_from_json(j.at("real"));
    std::map<Prime, LocalFunction> locals;
    for (const auto& [key, fj] : j.at("locals").items())
        locals.emplace(std::stol(key), local_from_json(fj));
    return AdelicTensor::make(std::move(real), std::move(locals));
}

json to_json(const AdelicFunction& f) {
    json terms = json::array();
    for (const auto& t : f.terms()) terms.push_back(to_json(t));
    return json{{"terms", terms}};
}

AdelicFunction adelic_from_json(const json& j) {
    if (!j.contains("terms")) return AdelicFunction(tensor_from_json(j));
    AdelicFunction f;
    for (const auto& tj : j.at("terms")) f = f + AdelicFunction(tensor_from_json(tj));
    return f;
}

json to_json(const AdelicIndex& idx) {
    json places = json::object();
    for (const auto& [p, e] : idx.places) {
        json ej;
        if (e.scaling)
            ej = json{{"type", "scaling"}, {"a", to_json(e.a)}};
        else
            ej = json{{"type", "wavelet"}, {"k", e.k}, {"j", e.j}, {"a", to_json(e.a)}};
        places[std::to_string(p)] = ej;
    }
    json out{{"places", places}};
    if (idx.real)
        out["real"] = json{{"scaling", idx.real->scaling}, {"j", idx.real->j}, {"n", idx.real->n}};
    else
        out["real"] = nullptr;
    return out;
}

AdelicIndex index_from_json(const json& j) {
    AdelicIndex idx;
    if (j.contains("real") && !j.at("real").is_null()) {
        RealIndex r;
        const json& rj = j.at("real");
        if (rj.contains("scaling")) r.scaling = rj.at("scaling").get<bool>();
        r.j = rj.value("j", 0L);
        r.n = rj.value("n", 0LL);
        idx.real = r;
    }
    for (const auto& [key, ej] : j.at("places").items()) {
        Prime p = std::stol(key);
        PlaceIndex e;
        std::string type = ej.value("type", std::string("wavelet"));
        if (type == "scaling") {
            e = PlaceIndex::scaling_shift(rat_from_json(ej.at("a")));
        } else {
            e = PlaceIndex::wavelet(ej.at("k").get<long>(), ej.at("j").get<long>(),
                                    ej.contains("a") ? rat_from_json(ej.at("a")) : Rat(0));
        }
        idx.places[p] = e;
    }
    return idx;
}

json to_json(const Symbol& s) {
    json places = json::object();
    for (const auto& [p, ps] : s.places) {
        if (std::holds_alternative<PowerNormSymbol>(ps)) {
            places[std::to_string(p)] =
                json{{"kind", "power"}, {"gamma", to_json(std::get<PowerNormSymbol>(ps).gamma)}};
        } else {
            const auto& tab = std::get<TabulatedSymbol>(ps);
            json pieces = json::array();
            for (const auto& [ball, v] : tab.pieces)
                pieces.push_back(json{{"ball", to_json(ball)}, {"value", to_json(v)}});
            places[std::to_string(p)] =
                json{{"kind", "table"}, {"pieces", pieces}, {"M", tab.constancy_exp}};
        }
    }
    return json{{"m", s.m}, {"places", places}};
}

Symbol symbol_from_json(const json& j) {
    Symbol s;
    s.m = j.at("m").get<Prime>();
    for (const auto& [key, pj] : j.at("places").items()) {
        Prime p = std::stol(key);
        std::string kind = pj.at("kind").get<std::string>();
        if (kind == "power") {
            s.places[p] = PowerNormSymbol{complex_from_json(pj.at("gamma"))};
        } else if (kind == "table") {
            TabulatedSymbol tab;
            tab.constancy_exp = pj.at("M").get<long>();
            for (const auto& pcj : pj.at("pieces"))
                tab.pieces.emplace_back(ball_from_json(pcj.at("ball")),
                                        complex_from_json(pcj.at("value")));
            s.places[p] = std::move(tab);
        } else {
            throw std::invalid_argument("symbol: unknown kind '" + kind + "'");
        }
    }
    return s;
}

json tagged(const LocalFunction& f) {
    json j = to_json(f);
    j["type"] = "local";
    return j;
}

json tagged(const DyadicStep& f) {
    json j = to_json(f);
    j["type"] = "real";
    return j;
}

json tagged(const AdelicFunction& f) {
    json j = to_json(f);
    j["type"] = "adelic";
    return j;
}

}  // namespace adelion
