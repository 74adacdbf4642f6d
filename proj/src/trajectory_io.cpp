#include "formsim/trajectory_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace formsim {

namespace {

void append_num(std::string& out, double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  out += buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string write_trajectory(const std::vector<StepRecord>& records,
                             const std::vector<int>& agent_ids) {
  std::string out;
  out += "t";
  for (int id : agent_ids) {
    for (const char* col : {"x", "y", "theta", "v", "u", "mode"}) {
      out += ',';
      out += col;
      out += '_';
      out += std::to_string(id);
    }
  }
  out += ",V_a,d_min,clearance\n";
  for (const StepRecord& rec : records) {
    append_num(out, rec.t);
    for (const AgentStep& a : rec.agents) {
      out += ',';
      append_num(out, a.x);
      out += ',';
      append_num(out, a.y);
      out += ',';
      append_num(out, a.theta);
      out += ',';
      append_num(out, a.v);
      out += ',';
      append_num(out, a.u);
      out += ',';
      out += std::to_string(static_cast<int>(a.mode));
    }
    out += ',';
    append_num(out, rec.v_a);
    out += ',';
    append_num(out, rec.d_min);
    out += ',';
    append_num(out, rec.clearance);
    out += '\n';
  }
  return out;
}

TrajectoryFile read_trajectory(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trajectory file");
  const std::vector<std::string> header = split(line, ',');
  if (header.size() < 4 || (header.size() - 4) % 6 != 0) {
    throw std::runtime_error("malformed trajectory header");
  }
  const int n = static_cast<int>((header.size() - 4) / 6);

  TrajectoryFile out;
  for (int i = 0; i < n; ++i) {
    const std::string& col = header[1 + 6 * i];  // "x_<id>"
    out.agent_ids.push_back(std::stoi(col.substr(col.find('_') + 1)));
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != header.size()) throw std::runtime_error("malformed trajectory row");
    StepRecord rec;
    rec.t = std::stod(f[0]);
    rec.agents.resize(n);
    for (int i = 0; i < n; ++i) {
      AgentStep& a = rec.agents[i];
      a.x = std::stod(f[1 + 6 * i]);
      a.y = std::stod(f[2 + 6 * i]);
      a.theta = std::stod(f[3 + 6 * i]);
      a.v = std::stod(f[4 + 6 * i]);
      a.u = std::stod(f[5 + 6 * i]);
      a.mode = static_cast<Mode>(std::stoi(f[6 + 6 * i]));
    }
    rec.v_a = std::stod(f[1 + 6 * n]);
    rec.d_min = std::stod(f[2 + 6 * n]);
    rec.clearance = std::stod(f[3 + 6 * n]);
    out.records.push_back(std::move(rec));
  }
  if (out.records.empty()) throw std::runtime_error("trajectory file has no rows");
  return out;
}

std::string format_metrics(const RunMetrics& m) {
  std::string out;
  auto line = [&out](const char* key, double value) {
    out += key;
    out += " = ";
    if (std::isnan(value)) {
      out += "n/a";
    } else {
      append_num(out, value);
    }
    out += '\n';
  };
  line("convergence_time_s", m.convergence_time);
  line("min_pairwise_distance_m", m.min_pairwise);
  line("min_obstacle_clearance_m", m.min_clearance);
  line("max_abs_v_mps", m.max_abs_v);
  line("max_abs_u_radps", m.max_abs_u);
  out += "admissible = ";
  out += m.admissible < 0 ? "n/a" : (m.admissible ? "true" : "false");
  out += '\n';
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace formsim
