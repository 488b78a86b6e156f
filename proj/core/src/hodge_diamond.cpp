#include "nhodge/hodge_diamond.hpp"

#include "nhodge/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace nhodge {

namespace {

Integer floor_of(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

int floor_int(const Rational& q) { return static_cast<int>(floor_of(q).get_si()); }

bool is_integral(const Rational& q) { return q.get_den() == 1; }

}  // namespace

std::string rational_string(const Rational& q) { return q.get_str(); }

void HodgeDiamond::add(int p, int q, std::int64_t mult) {
  if (mult == 0) return;
  auto& slot = entries[{p, q}];
  slot += mult;
  if (slot == 0) entries.erase({p, q});
}

std::int64_t HodgeDiamond::at(int p, int q) const {
  auto it = entries.find({p, q});
  return it == entries.end() ? 0 : it->second;
}

std::int64_t HodgeDiamond::total() const {
  std::int64_t t = 0;
  for (const auto& [pq, m] : entries) t += m;
  return t;
}

bool HodgeDiamond::is_symmetric() const {
  for (const auto& [pq, m] : entries)
    if (at(pq.second, pq.first) != m) return false;
  return true;
}

bool HodgeDiamond::is_diagonal() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.first.first == e.first.second; });
}

void Spectrum::add(const Rational& v, std::int64_t mult) {
  if (mult == 0) return;
  auto& slot = values[v];
  slot += mult;
  if (slot == 0) values.erase(v);
}

std::int64_t Spectrum::total() const {
  std::int64_t t = 0;
  for (const auto& [v, m] : values) t += m;
  return t;
}

bool Spectrum::is_symmetric_about(const Rational& center) const {
  for (const auto& [v, m] : values) {
    auto it = values.find(Rational(2 * center - v));
    if (it == values.end() || it->second != m) return false;
  }
  return true;
}

bool Spectrum::has_fractional_values() const {
  return std::any_of(values.begin(), values.end(), [](const auto& e) { return !is_integral(e.first); });
}

NCountTable n_counts(const StackyFan&, const BoxCatalog& boxes) {
  NCountTable t;
  for (const auto& b : boxes.elements()) ++t[{b.cone, b.degree}];
  return t;
}

NCountTable literal_n_counts(const StackyFan& fan, const BoxCatalog& boxes) {
  NCountTable t;
  for (ConeId c = 0; c < fan.cones().size(); ++c) {
    const RaySet& rays = fan.cone(c);
    for (const auto& b : boxes.elements())
      if (std::includes(rays.begin(), rays.end(), fan.cone(b.cone).begin(), fan.cone(b.cone).end()))
        ++t[{c, b.degree}];
  }
  return t;
}

DiamondPair assemble_diamonds(const StackyFan& fan, const BoxCatalog& boxes) {
  const int n = static_cast<int>(fan.rank());
  DiamondPair out;
  out.integral.weight = n;
  out.fractional.weight = n - 1;
  std::map<ConeId, FHVector> fh;
  for (const auto& u : boxes.elements()) {
    auto it = fh.find(u.cone);
    if (it == fh.end()) it = fh.emplace(u.cone, fan.f_and_h_vector(u.cone)).first;
    const std::vector<std::int64_t>& h = it->second.h;
    const int c = static_cast<int>(fan.cone_codim(u.cone));
    const Rational inverse_degree = Rational(static_cast<long>(fan.cone_dim(u.cone))) - u.degree;
    const int fu = floor_int(u.degree), fi = floor_int(inverse_degree);
    const bool integral = is_integral(u.degree);
    HodgeDiamond& target = integral ? out.integral : out.fractional;
    for (int k = 0; k <= c; ++k) {
      const int p = c - k + fi, q = c - k + fu;
      if (p + q != target.weight + c - 2 * k || p < 0 || q < 0 || p > target.weight || q > target.weight) {
        std::ostringstream os;
        os << "deposit (" << p << "," << q << ") for a box element of degree " << u.degree
           << " leaves its weight band";
        throw InternalConsistencyError(os.str());
      }
      target.add(p, q, h[k]);
    }
  }
  return out;
}

RatMatrix literal_block_matrix(const StackyFan& fan, const NCountTable& counts, ConeId sigma,
                               const Rational& alpha) {
  if (alpha < 0 || alpha >= 1) throw std::invalid_argument("alpha must lie in [0,1)");
  const std::vector<std::int64_t> h = fan.f_and_h_vector(sigma).h;
  const std::size_t columns = alpha == 0 ? fan.rank() + 1 : fan.rank();
  RatMatrix a(h.size(), columns, Rational(0));
  for (std::size_t j = 0; j < columns; ++j) {
    auto it = counts.find({sigma, alpha + static_cast<long>(j)});
    if (it == counts.end()) continue;
    for (std::size_t k = 0; k < h.size(); ++k) a(k, j) = Rational(static_cast<long>(h[k] * it->second));
  }
  return a;
}

DiamondPair diamonds_from_blocks(const StackyFan& fan, const BoxCatalog& boxes) {
  const int n = static_cast<int>(fan.rank());
  const NCountTable counts = n_counts(fan, boxes);
  std::set<std::pair<ConeId, Rational>> blocks;
  for (const auto& [key, m] : counts) blocks.insert({key.first, key.second - floor_of(key.second)});

  DiamondPair out;
  out.integral.weight = n;
  out.fractional.weight = n - 1;
  for (const auto& [sigma, alpha] : blocks) {
    const RatMatrix a = literal_block_matrix(fan, counts, sigma, alpha);
    HodgeDiamond& target = alpha == 0 ? out.integral : out.fractional;
    const int nu = target.weight, c = static_cast<int>(fan.cone_codim(sigma));
    for (std::size_t k = 0; k < a.rows(); ++k) {
      std::set<int> bands;
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (a(k, j) == 0) continue;
        const int p = nu - static_cast<int>(k) - static_cast<int>(j);
        const int q = c - static_cast<int>(k) + static_cast<int>(j);
        bands.insert(p + q);
        target.add(p, q, a(k, j).get_num().get_si());
      }
      if (bands.size() > 1 || (bands.size() == 1 && *bands.begin() != nu + c - 2 * static_cast<int>(k)))
        throw InternalConsistencyError("a block row is spread over several anti-diagonals");
    }
  }
  return out;
}

Spectrum spectrum(const StackyFan& fan, const BoxCatalog& boxes) {
  Spectrum s;
  std::map<ConeId, std::vector<std::int64_t>> hs;
  for (const auto& u : boxes.elements()) {
    auto it = hs.find(u.cone);
    if (it == hs.end()) it = hs.emplace(u.cone, fan.f_and_h_vector(u.cone).h).first;
    for (std::size_t k = 0; k < it->second.size(); ++k) s.add(u.degree + static_cast<long>(k), it->second[k]);
  }
  return s;
}

RenderFormat parse_render_format(std::string_view name) {
  if (name == "ascii") return RenderFormat::ascii;
  if (name == "json") return RenderFormat::json;
  throw std::invalid_argument("unknown output format '" + std::string(name) + "' (expected ascii|json)");
}

std::string render(const HodgeDiamond& d, RenderFormat format) {
  if (format == RenderFormat::json) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [pq, m] : d.entries) entries.push_back({pq.first, pq.second, m});
    return nlohmann::json{{"weight", d.weight}, {"entries", entries}}.dump();
  }
  // rows are anti-diagonals p + q = s, top row s = 2*size
  int size = std::max(d.weight, 0);
  for (const auto& [pq, m] : d.entries) size = std::max({size, pq.first, pq.second});
  std::size_t width = 1;
  for (const auto& [pq, m] : d.entries) width = std::max(width, std::to_string(m).size());

  std::ostringstream os;
  for (int s = 2 * size; s >= 0; --s) {
    std::string line;
    for (int col = 0; col <= 2 * size; ++col) {
      // column col holds (p, q) with q - p = col - size
      const int diff = col - size;
      std::string cell(width, ' ');
      if ((s + diff) % 2 == 0) {
        const int q = (s + diff) / 2, p = s - q;
        if (p >= 0 && q >= 0 && p <= size && q <= size) {
          const std::string v = std::to_string(d.at(p, q));
          cell = std::string(width - v.size(), ' ') + v;
        }
      }
      line += (col ? " " : "") + cell;
    }
    line.erase(line.find_last_not_of(' ') + 1);
    os << line << '\n';
  }
  return os.str();
}

std::string render(const Spectrum& s, RenderFormat format) {
  if (format == RenderFormat::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [v, m] : s.values) arr.push_back({rational_string(v), m});
    return arr.dump();
  }
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, m] : s.values) {
    os << (first ? "" : " ") << rational_string(v) << ':' << m;
    first = false;
  }
  os << '\n';
  return os.str();
}

}  // namespace nhodge
