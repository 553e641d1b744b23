#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "horolab/domain.hpp"
#include "horolab/engine.hpp"
#include "horolab/holomap.hpp"
#include "horolab/horofunction.hpp"

namespace horolab {

// Text descriptors, either compact or JSON (anything starting with '{').
// Compact forms:
//   domain  disk | half_plane | strip[:a,b] | ball:d | polydisc:d | bidisc
//           | square[:side] | polygon:re,im;re,im;...
//   point   re,im  or  re,im;re,im
//   target  point:<point> | end:index[:re,im]
//   style   radial | tangential:a | skew:e1,e2 | height:h
//   map     mobius:re,im[:theta] | affine:re,im:re,im | poly:re,im;re,im;...
//           | conjugate:<map>
// JSON forms use {"kind": ...} objects; see the README for the full schema.
// All parse failures raise input_error.
Domain parse_domain_spec(const std::string& spec);
Point parse_point_spec(const std::string& spec);
BoundaryTarget parse_target_spec(const std::string& spec);
ApproachStyle parse_style_spec(const std::string& spec);
HolomorphicMap parse_map_spec(const std::string& spec);

// One bag of knobs for a whole run; subcommands read the fields they use.
// Every field has a workable default, so {} parses.
struct RunConfig {
    Domain domain = Domain::disk();
    std::optional<HolomorphicMap> map;
    std::optional<Point> pole;
    std::vector<Point> points;
    std::vector<Point> seeds;
    std::optional<BoundaryTarget> target;
    std::vector<ApproachStyle> styles;
    std::vector<double> radii;
    std::vector<int> powers;
    int horizon = 200;
    int max_level = 6;
    int terms = 40;
    double tol = kTolH;
    std::uint64_t seed = 1234;
    ChainParams chain;
};

RunConfig parse_run_config_text(const std::string& text);
RunConfig load_run_config(const std::string& path);

}  // namespace horolab
