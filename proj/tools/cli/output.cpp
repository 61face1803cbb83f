#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "config.hpp"
#include "graphmark/error.hpp"

#ifndef GRAPHMARK_VERSION
#define GRAPHMARK_VERSION "unknown"
#endif

namespace graphmark::cli {

namespace fs = std::filesystem;

std::string format_real(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string curve_csv(const SummaryCurve& c) {
  const bool with_l = !c.l_transform.empty();
  std::string out = "# statistic: " + c.statistic + "\n";
  out += with_l ? "r,estimate,L\n" : "r,estimate\n";
  for (std::size_t g = 0; g < c.r.size(); ++g) {
    out += format_real(c.r[g]) + "," + format_real(c.estimate[g]);
    if (with_l) out += "," + format_real(c.l_transform[g]);
    out += "\n";
  }
  return out;
}

std::string envelope_csv(const std::string& statistic, const EnvelopeResult& e) {
  std::string out = "# statistic: " + statistic + "\n";
  out += "r,observed,lo,hi,masked\n";
  for (std::size_t g = 0; g < e.r.size(); ++g) {
    out += format_real(e.r[g]) + "," + format_real(e.observed[g]) + "," + format_real(e.lo[g]) +
           "," + format_real(e.hi[g]) + "," + (e.masked[g] ? "1" : "0") + "\n";
  }
  return out;
}

nlohmann::ordered_json envelope_result_json(const EnvelopeResult& e) {
  nlohmann::ordered_json j;
  j["alpha"] = e.alpha;
  j["s"] = e.s;
  j["rejected"] = e.rejected;
  j["erl_rank_observed"] = e.erl_rank_observed;
  j["p_value"] = e.p_value;
  return j;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> f;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      f.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  f.push_back(cur);
  return f;
}

double parse_field(const std::string& s, std::size_t line) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) {
    throw ConfigError("line " + std::to_string(line) + ": '" + s + "' is not a number");
  }
  return v;
}

}  // namespace

PlotData parse_plot_csv(const std::string& text) {
  PlotData d;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  int col_r = -1, col_obs = -1, col_lo = -1, col_hi = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string key = "# statistic: ";
      if (line.rfind(key, 0) == 0) d.statistic = line.substr(key.size());
      continue;
    }
    auto fields = split_fields(line);
    if (header.empty()) {
      header = fields;
      for (std::size_t k = 0; k < header.size(); ++k) {
        const auto& h = header[k];
        if (h == "r") col_r = static_cast<int>(k);
        if (h == "estimate" || h == "observed") col_obs = static_cast<int>(k);
        if (h == "lo") col_lo = static_cast<int>(k);
        if (h == "hi") col_hi = static_cast<int>(k);
      }
      if (col_r < 0 || col_obs < 0) {
        throw ConfigError("line " + std::to_string(lineno) +
                          ": header needs an r column and an estimate or observed column");
      }
      if ((col_lo < 0) != (col_hi < 0)) {
        throw ConfigError("line " + std::to_string(lineno) + ": lo and hi must come together");
      }
      continue;
    }
    if (fields.size() != header.size()) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected " +
                        std::to_string(header.size()) + " fields");
    }
    const double r = parse_field(fields[col_r], lineno);
    if (std::isnan(r)) throw ConfigError("line " + std::to_string(lineno) + ": r is empty");
    if (!d.r.empty() && !(r > d.r.back())) {
      throw ConfigError("line " + std::to_string(lineno) + ": r must be increasing");
    }
    d.r.push_back(r);
    d.observed.push_back(parse_field(fields[col_obs], lineno));
    if (col_lo >= 0) {
      d.lo.push_back(parse_field(fields[col_lo], lineno));
      d.hi.push_back(parse_field(fields[col_hi], lineno));
    }
  }
  if (header.empty()) throw ConfigError("CSV is empty");
  if (d.r.empty()) throw ConfigError("CSV has a header but no rows");
  if (d.statistic.empty()) d.statistic = header[col_obs];
  return d;
}

namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const PlotData& d) {
  constexpr double W = 640, H = 400, L = 72, R = 20, T = 20, B = 52;
  const bool band = !d.lo.empty();

  double x0 = std::min(0.0, d.r.front()), x1 = d.r.back();
  if (!(x1 > x0)) x1 = x0 + 1.0;
  double y0 = std::numeric_limits<double>::infinity(), y1 = -y0;
  auto extend = [&](const std::vector<double>& v) {
    for (double y : v) {
      if (std::isfinite(y)) {
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
    }
  };
  extend(d.observed);
  extend(d.lo);
  extend(d.hi);
  if (!std::isfinite(y0)) {
    y0 = 0.0;
    y1 = 1.0;
  }
  if (!(y1 > y0)) {
    y0 -= 1.0;
    y1 += 1.0;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto sy = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
       "viewBox=\"0 0 640 400\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"400\" fill=\"white\"/>\n";

  if (band) {
    std::string pts;
    for (std::size_t g = 0; g < d.r.size(); ++g) {
      if (!std::isfinite(d.lo[g]) || !std::isfinite(d.hi[g])) continue;
      pts += fixed2(sx(d.r[g])) + "," + fixed2(sy(d.hi[g])) + " ";
    }
    for (std::size_t g = d.r.size(); g-- > 0;) {
      if (!std::isfinite(d.lo[g]) || !std::isfinite(d.hi[g])) continue;
      pts += fixed2(sx(d.r[g])) + "," + fixed2(sy(d.lo[g])) + " ";
    }
    if (!pts.empty()) pts.pop_back();
    s += "<polygon class=\"band\" points=\"" + pts +
         "\" fill=\"#b0b0b0\" fill-opacity=\"0.6\" stroke=\"none\"/>\n";
  }

  // Axes with five ticks each.
  const std::string ax = fixed2(L), ay = fixed2(H - B), ar = fixed2(W - R), at = fixed2(T);
  s += "<line x1=\"" + ax + "\" y1=\"" + ay + "\" x2=\"" + ar + "\" y2=\"" + ay +
       "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + ax + "\" y1=\"" + ay + "\" x2=\"" + ax + "\" y2=\"" + at +
       "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4.0;
    const double yv = y0 + (y1 - y0) * k / 4.0;
    const std::string px = fixed2(sx(xv)), py = fixed2(sy(yv));
    s += "<line x1=\"" + px + "\" y1=\"" + ay + "\" x2=\"" + px + "\" y2=\"" +
         fixed2(H - B + 5) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + px + "\" y=\"" + fixed2(H - B + 18) +
         "\" font-size=\"11\" text-anchor=\"middle\">" + tick_label(xv) + "</text>\n";
    s += "<line x1=\"" + fixed2(L - 5) + "\" y1=\"" + py + "\" x2=\"" + ax + "\" y2=\"" + py +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fixed2(L - 8) + "\" y=\"" + fixed2(sy(yv) + 4) +
         "\" font-size=\"11\" text-anchor=\"end\">" + tick_label(yv) + "</text>\n";
  }
  s += "<text x=\"" + fixed2(L + (W - L - R) / 2) + "\" y=\"" + fixed2(H - 10) +
       "\" font-size=\"13\" text-anchor=\"middle\">r</text>\n";
  s += "<text x=\"14\" y=\"" + fixed2(T + (H - T - B) / 2) + "\" font-size=\"13\" " +
       "text-anchor=\"middle\" transform=\"rotate(-90 14 " + fixed2(T + (H - T - B) / 2) +
       ")\">" + xml_escape(d.statistic) + "</text>\n";

  std::string path;
  bool pen = false;
  for (std::size_t g = 0; g < d.r.size(); ++g) {
    if (!std::isfinite(d.observed[g])) {
      pen = false;
      continue;
    }
    path += (pen ? "L" : "M") + fixed2(sx(d.r[g])) + " " + fixed2(sy(d.observed[g])) + " ";
    pen = true;
  }
  if (!path.empty()) path.pop_back();
  s += "<path class=\"observed\" d=\"" + path +
       "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  s += "</svg>\n";
  return s;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

fs::path manifest_path(const fs::path& out) { return fs::path(out.string() + ".manifest.json"); }

void write_manifest(const Manifest& m, const fs::path& out) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["version"] = GRAPHMARK_VERSION;
  j["config_digest"] = config_digest(m.config);
  j["config"] = m.config;
  j["seed"] = m.seed;
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  j["threads"] = m.threads;
  j["wall_seconds"] = m.wall_seconds;
  write_file(manifest_path(out), j.dump(2) + "\n");
}

}  // namespace graphmark::cli
