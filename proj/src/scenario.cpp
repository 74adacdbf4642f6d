#include "formsim/scenario.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace formsim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ScenarioError(msg); }

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

double num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) fail(std::string("field '") + key + "' must be a number");
  return j[key].get<double>();
}

Vec2 vec2(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2 ||
      !j[key][0].is_number() || !j[key][1].is_number()) {
    fail(std::string("field '") + key + "' must be a [x, y] pair");
  }
  return Vec2(j[key][0].get<double>(), j[key][1].get<double>());
}

TrackingGains parse_gains(const json& j, const TrackingGains& base) {
  TrackingGains g = base;
  g.k_theta = num(j, "k_theta", g.k_theta);
  g.k = num(j, "k", g.k);
  g.d_max = num(j, "d_max", g.d_max);
  if (!g.valid()) fail("gains must be positive");
  return g;
}

std::vector<AgentInit> generate_agents(const AgentGenerator& gen,
                                       const std::vector<Obstacle>& obstacles,
                                       unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(gen.box_min.x(), gen.box_max.x());
  std::uniform_real_distribution<double> uy(gen.box_min.y(), gen.box_max.y());
  std::vector<AgentInit> agents;
  int attempts = 0;
  while (static_cast<int>(agents.size()) < gen.count) {
    if (++attempts > 100000) fail("could not place generated agents");
    const Vec2 p(ux(rng), uy(rng));
    bool ok = true;
    for (const AgentInit& a : agents) {
      if (distance(a.start, p) < gen.min_separation) ok = false;
    }
    for (const Obstacle& o : obstacles) {
      if (distance(p, o.center) - o.radius < gen.min_separation) ok = false;
    }
    if (!ok) continue;
    AgentInit a;
    a.id = static_cast<int>(agents.size()) + 1;
    a.start = p;
    agents.push_back(a);
  }
  return agents;
}

void validate(const Scenario& s) {
  if (!(s.dt > 0.0)) fail("dt must be positive");
  if (!(s.duration > 0.0)) fail("duration must be positive");
  if (s.estimator_delay < s.dt) fail("estimator delay must be at least dt");
  if (!(s.theta_dot_cap > 0.0)) fail("theta_dot_cap must be positive");
  if (!(s.v_cap > 0.0) || !(s.u_cap > 0.0)) fail("speed caps must be positive");
  if (!(s.potential.k > 0.0)) fail("potential scale must be positive");
  if (!(0.0 < s.potential.a && s.potential.a < s.potential.b &&
        s.potential.b < s.potential.c)) {
    fail("potential params must satisfy a < b < c");
  }
  if (!(s.tol_conv > 0.0)) fail("tol_conv must be positive");
  if (!(s.sup.d_circ > 0.0)) fail("d_circ must be positive");
  if (s.sup.circ_band < 0.0) fail("hysteresis must be nonnegative");
  if (s.sup.dwell_steps < 0) fail("mode_dwell_steps must be nonnegative");
  if (s.agents.empty()) fail("scenario needs at least one agent");
  for (const Obstacle& o : s.obstacles) {
    if (!(o.radius > 0.0)) fail("obstacle radius must be positive");
  }
  for (std::size_t i = 0; i < s.agents.size(); ++i) {
    if (!finite(s.agents[i].start) || !std::isfinite(s.agents[i].heading)) {
      fail("agent start must be finite");
    }
    if (!s.agents[i].gains.valid()) fail("gains must be positive");
    for (std::size_t j = 0; j < i; ++j) {
      if (s.agents[i].id == s.agents[j].id) fail("duplicate agent id");
      if (distance(s.agents[i].start, s.agents[j].start) < s.potential.a) {
        fail("no two agents may start within the avoidance radius a");
      }
    }
    for (const Obstacle& o : s.obstacles) {
      if (distance(s.agents[i].start, o.center) <= o.radius) {
        fail("agent starts inside an obstacle");
      }
    }
  }
  if (s.formation.agent_count() != static_cast<int>(s.agents.size())) {
    fail("formation must provide one reference per agent");
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    std::ostringstream msg;
    msg << "syntax error at line " << line << ", column " << col;
    throw ScenarioError(msg.str());
  }
  if (!j.is_object()) fail("scenario document must be an object");

  Scenario s;
  s.name = j.value("name", std::string{});
  s.dt = num(j, "dt", 0.01);
  s.duration = num(j, "duration", 30.0);
  s.estimator_delay = num(j, "estimator_delay", 0.1);
  s.seed = static_cast<unsigned long>(num(j, "seed", 0.0));
  s.tol_conv = num(j, "tol_conv", 0.5);

  if (j.contains("gains")) s.gains = parse_gains(j["gains"], TrackingGains{});
  if (j.contains("potential")) {
    const json& p = j["potential"];
    s.potential.k = num(p, "k", 3.0);
    s.potential.a = num(p, "a", 1.0);
    s.potential.b = num(p, "b", 2.0);
    s.potential.c = num(p, "c", 4.0);
  }

  if (j.contains("obstacles")) {
    if (!j["obstacles"].is_array()) fail("field 'obstacles' must be an array");
    for (const json& o : j["obstacles"]) {
      Obstacle obs;
      obs.center = vec2(o, "center");
      obs.radius = num(o, "radius", -1.0);
      s.obstacles.push_back(obs);
    }
  }

  if (j.contains("agents") && j.contains("generate_agents")) {
    fail("give either 'agents' or 'generate_agents', not both");
  }
  if (j.contains("agents")) {
    if (!j["agents"].is_array()) fail("field 'agents' must be an array");
    int next_id = 1;
    for (const json& a : j["agents"]) {
      AgentInit init;
      init.id = static_cast<int>(num(a, "id", next_id));
      next_id = init.id + 1;
      init.start = vec2(a, "start");
      init.heading = num(a, "heading", 0.0);
      init.gains = a.contains("gains") ? parse_gains(a["gains"], s.gains) : s.gains;
      s.agents.push_back(init);
    }
  } else if (j.contains("generate_agents")) {
    const json& g = j["generate_agents"];
    AgentGenerator gen;
    gen.count = static_cast<int>(num(g, "count", 0.0));
    gen.box_min = vec2(g, "box_min");
    gen.box_max = vec2(g, "box_max");
    gen.min_separation = num(g, "min_separation", s.potential.b);
    if (gen.count <= 0) fail("generate_agents.count must be positive");
    s.generator = gen;
    s.agents = generate_agents(gen, s.obstacles, s.seed);
    for (AgentInit& a : s.agents) a.gains = s.gains;
  } else {
    fail("scenario needs at least one agent");
  }

  if (!j.contains("formation")) fail("scenario needs a 'formation'");
  const json& f = j["formation"];
  const std::string kind = f.value("mode", "affine");
  if (kind == "affine") {
    s.formation.kind = FormationSpec::Kind::Affine;
    s.formation.rate = f.contains("rate") ? vec2(f, "rate") : Vec2(0.0, 0.0);
    if (f.contains("offsets")) {
      for (std::size_t i = 0; i < f["offsets"].size(); ++i) {
        const json& o = f["offsets"][i];
        if (!o.is_array() || o.size() != 2) fail("formation offsets must be [x, y] pairs");
        s.formation.offsets.emplace_back(o[0].get<double>(), o[1].get<double>());
      }
    } else {
      // default: hold station at the start positions
      for (const AgentInit& a : s.agents) s.formation.offsets.push_back(a.start);
    }
  } else if (kind == "circular") {
    s.formation.kind = FormationSpec::Kind::Circular;
    s.formation.center = f.contains("center") ? vec2(f, "center") : Vec2(0.0, 0.0);
    s.formation.radius = num(f, "radius", 0.0);
    s.formation.angular_rate = num(f, "angular_rate", 0.0);
    if (f.contains("phases")) {
      for (const json& p : f["phases"]) s.formation.phases.push_back(p.get<double>());
    } else {
      for (std::size_t i = 0; i < s.agents.size(); ++i) {
        s.formation.phases.push_back(kTwoPi * static_cast<double>(i) /
                                     static_cast<double>(s.agents.size()));
      }
    }
  } else {
    fail("formation mode must be 'affine' or 'circular'");
  }

  s.theta_dot_cap = num(j, "theta_dot_cap", kTwoPi / s.estimator_delay);
  double vmax = 0.0, umax = 0.0;
  for (const AgentInit& a : s.agents) {
    vmax = std::max(vmax, a.gains.k * a.gains.d_max);
    umax = std::max(umax, a.gains.k_theta * kPi + s.theta_dot_cap);
  }
  s.v_cap = num(j, "v_cap", vmax);
  s.u_cap = num(j, "u_cap", umax);

  s.sup.d_circ = num(j, "d_circ", s.potential.b + 3.0);
  s.sup.circ_band = num(j, "hysteresis", 0.5);
  s.sup.dwell_steps = static_cast<int>(num(j, "mode_dwell_steps", 10.0));
  s.sup.urgent_margin = num(j, "avoid_urgent_margin", 0.3);

  validate(s);
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["dt"] = s.dt;
  j["duration"] = s.duration;
  j["estimator_delay"] = s.estimator_delay;
  j["theta_dot_cap"] = s.theta_dot_cap;
  j["v_cap"] = s.v_cap;
  j["u_cap"] = s.u_cap;
  j["seed"] = s.seed;
  j["tol_conv"] = s.tol_conv;
  j["gains"] = {{"k_theta", s.gains.k_theta}, {"k", s.gains.k}, {"d_max", s.gains.d_max}};
  j["potential"] = {{"k", s.potential.k},
                    {"a", s.potential.a},
                    {"b", s.potential.b},
                    {"c", s.potential.c}};
  j["obstacles"] = json::array();
  for (const Obstacle& o : s.obstacles) {
    j["obstacles"].push_back({{"center", {o.center.x(), o.center.y()}},
                              {"radius", o.radius}});
  }
  j["agents"] = json::array();
  for (const AgentInit& a : s.agents) {
    json ja = {{"id", a.id},
               {"start", {a.start.x(), a.start.y()}},
               {"heading", a.heading},
               {"gains",
                {{"k_theta", a.gains.k_theta}, {"k", a.gains.k}, {"d_max", a.gains.d_max}}}};
    j["agents"].push_back(ja);
  }
  if (s.formation.kind == FormationSpec::Kind::Affine) {
    json offs = json::array();
    for (const Vec2& o : s.formation.offsets) offs.push_back({o.x(), o.y()});
    j["formation"] = {{"mode", "affine"},
                      {"rate", {s.formation.rate.x(), s.formation.rate.y()}},
                      {"offsets", offs}};
  } else {
    j["formation"] = {{"mode", "circular"},
                      {"center", {s.formation.center.x(), s.formation.center.y()}},
                      {"radius", s.formation.radius},
                      {"angular_rate", s.formation.angular_rate},
                      {"phases", s.formation.phases}};
  }
  j["d_circ"] = s.sup.d_circ;
  j["hysteresis"] = s.sup.circ_band;
  j["mode_dwell_steps"] = s.sup.dwell_steps;
  j["avoid_urgent_margin"] = s.sup.urgent_margin;
  return j.dump(2) + "\n";
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace formsim
