#include "tomokit/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <system_error>
#include <vector>

#include "tomokit/error.hpp"

namespace tomo::io {
namespace {

double parse_field(std::string_view text, std::size_t line) {
  double v = 0.0;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw NumericGuard("tomogram CSV line " + std::to_string(line) + ": cannot parse '" +
                       std::string(text) + "'");
  }
  return v;
}

} // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string tomogram_csv(const OpticalTomogram& w) {
  std::string out = "X,theta,w\n";
  out.reserve(w.values().size() * 48);
  for (std::size_t k = 0; k < w.angles().size(); ++k) {
    const std::string theta = format_double(w.angles().at(k));
    for (std::size_t i = 0; i < w.x().size(); ++i) {
      out += format_double(w.x().at(i));
      out += ',';
      out += theta;
      out += ',';
      out += format_double(w.at(i, k));
      out += '\n';
    }
  }
  return out;
}

std::string phase_csv(const PhaseSpaceField& f) {
  std::string out = "q,p,f\n";
  out.reserve(f.values.size() * 48);
  for (std::size_t i = 0; i < f.q.size(); ++i) {
    const std::string q = format_double(f.q.at(i));
    for (std::size_t j = 0; j < f.p.size(); ++j) {
      out += q;
      out += ',';
      out += format_double(f.p.at(j));
      out += ',';
      out += format_double(f.at(i, j));
      out += '\n';
    }
  }
  return out;
}

OpticalTomogram parse_tomogram_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw NumericGuard("tomogram CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "X,theta,w") throw NumericGuard("tomogram CSV: header must be 'X,theta,w'");

  std::vector<double> thetas;
  std::vector<std::vector<double>> xs;
  std::vector<double> values;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos) {
      throw NumericGuard("tomogram CSV line " + std::to_string(lineno) + ": expected 3 fields");
    }
    const std::string_view sv(line);
    const double X = parse_field(sv.substr(0, c1), lineno);
    const double theta = parse_field(sv.substr(c1 + 1, c2 - c1 - 1), lineno);
    const double w = parse_field(sv.substr(c2 + 1), lineno);
    if (thetas.empty() || theta != thetas.back()) {
      thetas.push_back(theta);
      xs.emplace_back();
    }
    xs.back().push_back(X);
    values.push_back(w);
  }
  if (thetas.empty()) throw NumericGuard("tomogram CSV: no data rows");

  const auto& x0 = xs.front();
  if (x0.size() < Grid1D::kMinPoints) throw NumericGuard("tomogram CSV: too few X samples per slice");
  for (const auto& x : xs) {
    if (x != x0) throw NumericGuard("tomogram CSV: slices do not share one X grid");
  }
  const double half = -x0.front();
  if (!(half > 0.0) || std::abs(x0.back() - half) > 1e-9 * half) {
    throw NumericGuard("tomogram CSV: X grid must be symmetric [-L, L]");
  }
  const Grid1D xg(half, x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i) {
    if (std::abs(x0[i] - xg.at(i)) > 1e-6 * xg.step()) {
      throw NumericGuard("tomogram CSV: X grid is not uniform");
    }
  }

  const std::size_t n = thetas.size();
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  const double phase = thetas.front() / step;
  if (!(phase >= 0.0 && phase < 1.0)) {
    throw NumericGuard("tomogram CSV: angles must start in [0, 2pi/N) and cover the full circle");
  }
  const AngleGrid ag(n, phase);
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(thetas[k] - ag.at(k)) > 1e-6 * step) {
      throw NumericGuard("tomogram CSV: angles are not uniformly spaced over the full circle");
    }
  }
  for (double& v : values) {
    if (v < 0.0) {
      if (v < -1e-12) throw NumericGuard("tomogram CSV: negative probability density");
      v = 0.0;
    }
  }
  return OpticalTomogram(xg, ag, std::move(values));
}

OpticalTomogram read_tomogram_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open tomogram file '" + path.string() + "'");
  return parse_tomogram_csv(in);
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw InvalidInput("write failed for '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

} // namespace tomo::io
