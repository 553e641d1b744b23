#include "horolab/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "horolab/error.hpp"

namespace horolab {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw input_error("config: malformed JSON");
    return j;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

double number(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw input_error("config: trailing junk in number '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw input_error("config: expected a number, got '" + s + "'");
    }
}

Complex complex_pair(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() != 2) throw input_error("config: expected re,im in '" + s + "'");
    return Complex(number(parts[0]), number(parts[1]));
}

double field_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw input_error(std::string("config: missing numeric field '") + key + "'");
    return j[key].get<double>();
}

std::string kind_of(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw input_error("config: descriptor objects need a string 'kind'");
    return j["kind"].get<std::string>();
}

Complex complex_from(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw input_error("config: a complex number is [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

Point point_from(const json& j) {
    if (!j.is_array() || j.empty())
        throw input_error("config: a point is [re,im] or [[re,im],[re,im]]");
    if (j[0].is_number()) return Point(complex_from(j));
    if (j.size() == 1) return Point(complex_from(j[0]));
    if (j.size() == 2) return Point(complex_from(j[0]), complex_from(j[1]));
    throw input_error("config: points have at most two coordinates");
}

Domain domain_from(const json& j);

Domain domain_from_kind(const json& j, const std::string& kind) {
    if (kind == "disk") return Domain::disk();
    if (kind == "half_plane") return Domain::half_plane();
    if (kind == "strip")
        return Domain::strip(field_number(j, "im_min"), field_number(j, "im_max"));
    if (kind == "ball") return Domain::ball(static_cast<int>(field_number(j, "dim")));
    if (kind == "polydisc")
        return Domain::polydisc(static_cast<int>(field_number(j, "dim")));
    if (kind == "product") {
        if (!j.contains("factors") || !j["factors"].is_array())
            throw input_error("config: product needs a 'factors' array");
        std::vector<Domain> factors;
        for (const json& f : j["factors"]) factors.push_back(domain_from(f));
        return Domain::product(std::move(factors));
    }
    if (kind == "convex_polygon") {
        if (!j.contains("vertices") || !j["vertices"].is_array())
            throw input_error("config: convex_polygon needs a 'vertices' array");
        std::vector<Complex> vs;
        for (const json& v : j["vertices"]) vs.push_back(complex_from(v));
        return Domain::convex_polygon(std::move(vs));
    }
    if (kind == "conformal_square") return Domain::conformal_square(field_number(j, "side"));
    throw input_error("config: unknown domain kind '" + kind + "'");
}

Domain domain_from(const json& j) {
    if (j.is_string()) return parse_domain_spec(j.get<std::string>());
    return domain_from_kind(j, kind_of(j));
}

HolomorphicMap map_from(const json& j);

HolomorphicMap map_from_kind(const json& j, const std::string& kind) {
    if (kind == "mobius") {
        const Complex a = complex_from(j.at("a"));
        const double theta = j.contains("theta") ? field_number(j, "theta") : 0.0;
        return HolomorphicMap::mobius(a, theta);
    }
    if (kind == "affine")
        return HolomorphicMap::affine(complex_from(j.at("a")), complex_from(j.at("b")));
    if (kind == "poly") {
        if (!j.contains("coeffs") || !j["coeffs"].is_array())
            throw input_error("config: poly needs a 'coeffs' array");
        std::vector<Complex> cs;
        for (const json& c : j["coeffs"]) cs.push_back(complex_from(c));
        return HolomorphicMap::poly(std::move(cs));
    }
    if (kind == "coordinatewise") {
        if (!j.contains("maps") || !j["maps"].is_array())
            throw input_error("config: coordinatewise needs a 'maps' array");
        std::vector<HolomorphicMap> maps;
        for (const json& m : j["maps"]) maps.push_back(map_from(m));
        return HolomorphicMap::coordinatewise(std::move(maps));
    }
    if (kind == "disk_conjugate")
        return HolomorphicMap::disk_conjugate(map_from(j.at("inner")));
    throw input_error("config: unknown map kind '" + kind + "'");
}

HolomorphicMap map_from(const json& j) {
    if (j.is_string()) return parse_map_spec(j.get<std::string>());
    try {
        return map_from_kind(j, kind_of(j));
    } catch (const json::exception& e) {
        throw input_error(std::string("config: bad map descriptor: ") + e.what());
    }
}

BoundaryTarget target_from(const json& j) {
    if (j.is_string()) return parse_target_spec(j.get<std::string>());
    const std::string kind = kind_of(j);
    if (kind == "point") {
        if (!j.contains("at")) throw input_error("config: point target needs 'at'");
        return BoundaryTarget::at(point_from(j["at"]));
    }
    if (kind == "end") {
        const int index = static_cast<int>(field_number(j, "index"));
        Complex dir{0.0, 0.0};
        if (j.contains("direction")) dir = complex_from(j["direction"]);
        return BoundaryTarget::end(index, dir);
    }
    throw input_error("config: unknown target kind '" + kind + "'");
}

ApproachStyle style_from(const json& j) {
    if (j.is_string()) return parse_style_spec(j.get<std::string>());
    const std::string kind = kind_of(j);
    if (kind == "radial") return ApproachStyle::radial();
    if (kind == "tangential") return ApproachStyle::tangential(field_number(j, "angle"));
    if (kind == "skew") {
        if (!j.contains("exponents") || !j["exponents"].is_array() ||
            j["exponents"].size() != 2)
            throw input_error("config: skew needs 'exponents' [e1, e2]");
        return ApproachStyle::skew(j["exponents"][0].get<double>(),
                                   j["exponents"][1].get<double>());
    }
    if (kind == "height") return ApproachStyle::at_height(field_number(j, "height"));
    if (kind == "custom") {
        if (!j.contains("points") || !j["points"].is_array())
            throw input_error("config: custom style needs a 'points' array");
        std::vector<Point> pts;
        for (const json& p : j["points"]) pts.push_back(point_from(p));
        std::string name = j.contains("name") ? j["name"].get<std::string>() : "custom";
        return ApproachStyle::custom(std::move(pts), std::move(name));
    }
    throw input_error("config: unknown style kind '" + kind + "'");
}

}  // namespace

Domain parse_domain_spec(const std::string& spec) {
    if (!spec.empty() && spec.front() == '{') return domain_from(parse_json(spec));
    const auto parts = split(spec, ':');
    const std::string& name = parts[0];
    if (name == "disk" && parts.size() == 1) return Domain::disk();
    if (name == "half_plane" && parts.size() == 1) return Domain::half_plane();
    if (name == "strip") {
        if (parts.size() == 1) return Domain::strip(0.0, 1.0);
        const auto nums = split(parts[1], ',');
        if (parts.size() == 2 && nums.size() == 2)
            return Domain::strip(number(nums[0]), number(nums[1]));
    }
    if (name == "ball" && parts.size() == 2)
        return Domain::ball(static_cast<int>(number(parts[1])));
    if (name == "polydisc" && parts.size() == 2)
        return Domain::polydisc(static_cast<int>(number(parts[1])));
    if (name == "bidisc" && parts.size() == 1) return Domain::polydisc(2);
    if (name == "square") {
        if (parts.size() == 1) return Domain::conformal_square(2.0);
        if (parts.size() == 2) return Domain::conformal_square(number(parts[1]));
    }
    if (name == "polygon" && parts.size() == 2) {
        std::vector<Complex> vs;
        for (const std::string& v : split(parts[1], ';')) vs.push_back(complex_pair(v));
        return Domain::convex_polygon(std::move(vs));
    }
    throw input_error("config: unknown domain spec '" + spec + "'");
}

Point parse_point_spec(const std::string& spec) {
    if (!spec.empty() && spec.front() == '[') return point_from(parse_json(spec));
    const auto coords = split(spec, ';');
    if (coords.size() == 1) return Point(complex_pair(coords[0]));
    if (coords.size() == 2)
        return Point(complex_pair(coords[0]), complex_pair(coords[1]));
    throw input_error("config: bad point spec '" + spec + "'");
}

BoundaryTarget parse_target_spec(const std::string& spec) {
    if (!spec.empty() && spec.front() == '{') return target_from(parse_json(spec));
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string head = spec.substr(0, colon);
        const std::string rest = spec.substr(colon + 1);
        if (head == "point") return BoundaryTarget::at(parse_point_spec(rest));
        if (head == "end") {
            const auto parts = split(rest, ':');
            const int index = static_cast<int>(number(parts[0]));
            Complex dir{0.0, 0.0};
            if (parts.size() == 2) dir = complex_pair(parts[1]);
            if (parts.size() <= 2) return BoundaryTarget::end(index, dir);
        }
    }
    throw input_error("config: bad target spec '" + spec + "'");
}

ApproachStyle parse_style_spec(const std::string& spec) {
    if (!spec.empty() && spec.front() == '{') return style_from(parse_json(spec));
    const auto parts = split(spec, ':');
    const std::string& name = parts[0];
    if (name == "radial" && parts.size() == 1) return ApproachStyle::radial();
    if (name == "tangential" && parts.size() == 2)
        return ApproachStyle::tangential(number(parts[1]));
    if (name == "skew" && parts.size() == 2) {
        const auto es = split(parts[1], ',');
        if (es.size() == 2) return ApproachStyle::skew(number(es[0]), number(es[1]));
    }
    if (name == "height" && parts.size() == 2)
        return ApproachStyle::at_height(number(parts[1]));
    throw input_error("config: bad style spec '" + spec + "'");
}

HolomorphicMap parse_map_spec(const std::string& spec) {
    if (!spec.empty() && spec.front() == '{') return map_from(parse_json(spec));
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string head = spec.substr(0, colon);
        const std::string rest = spec.substr(colon + 1);
        if (head == "mobius") {
            const auto parts = split(rest, ':');
            if (parts.size() == 1) return HolomorphicMap::mobius(complex_pair(parts[0]));
            if (parts.size() == 2)
                return HolomorphicMap::mobius(complex_pair(parts[0]), number(parts[1]));
        }
        if (head == "affine") {
            const auto parts = split(rest, ':');
            if (parts.size() == 2)
                return HolomorphicMap::affine(complex_pair(parts[0]),
                                              complex_pair(parts[1]));
        }
        if (head == "poly") {
            std::vector<Complex> cs;
            for (const std::string& c : split(rest, ';')) cs.push_back(complex_pair(c));
            return HolomorphicMap::poly(std::move(cs));
        }
        if (head == "conjugate")
            return HolomorphicMap::disk_conjugate(parse_map_spec(rest));
    }
    throw input_error("config: bad map spec '" + spec + "'");
}

RunConfig parse_run_config_text(const std::string& text) {
    const json j = parse_json(text);
    if (!j.is_object()) throw input_error("config: top level must be an object");

    static const char* known[] = {"domain", "map",     "pole",   "points", "seeds",
                                  "target", "styles",  "radii",  "powers", "horizon",
                                  "max_level", "terms", "tol",   "seed",   "chain"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw input_error("config: unknown key '" + key + "'");
    }

    RunConfig cfg;
    try {
        if (j.contains("domain")) cfg.domain = domain_from(j["domain"]);
        if (j.contains("map")) cfg.map = map_from(j["map"]);
        if (j.contains("pole")) cfg.pole = point_from(j["pole"]);
        if (j.contains("points"))
            for (const json& p : j["points"]) cfg.points.push_back(point_from(p));
        if (j.contains("seeds"))
            for (const json& p : j["seeds"]) cfg.seeds.push_back(point_from(p));
        if (j.contains("target")) cfg.target = target_from(j["target"]);
        if (j.contains("styles"))
            for (const json& s : j["styles"]) cfg.styles.push_back(style_from(s));
        if (j.contains("radii"))
            for (const json& r : j["radii"]) cfg.radii.push_back(r.get<double>());
        if (j.contains("powers"))
            for (const json& p : j["powers"]) cfg.powers.push_back(p.get<int>());
        if (j.contains("horizon")) cfg.horizon = j["horizon"].get<int>();
        if (j.contains("max_level")) cfg.max_level = j["max_level"].get<int>();
        if (j.contains("terms")) cfg.terms = j["terms"].get<int>();
        if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("chain")) {
            const json& c = j["chain"];
            if (c.contains("h0")) cfg.chain.h0 = c["h0"].get<double>();
            if (c.contains("h_min")) cfg.chain.h_min = c["h_min"].get<double>();
            if (c.contains("tol")) cfg.chain.tol = c["tol"].get<double>();
        }
    } catch (const json::exception& e) {
        throw input_error(std::string("config: ") + e.what());
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config_text(buf.str());
}

}  // namespace horolab
