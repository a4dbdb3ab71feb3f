#include "roisim/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "roisim/traffic/video_trace.hpp"

namespace roisim {

ChannelModel ChannelConfig::build() const {
  if (kind == "bernoulli") return ChannelModel::bernoulli(p_loss);
  if (kind == "gilbert_elliott") {
    return ChannelModel::gilbert_elliott(p_g2b, p_b2g, loss_good, loss_bad);
  }
  throw std::invalid_argument("channel.kind must be 'bernoulli' or 'gilbert_elliott', got '" +
                              kind + "'");
}

namespace {

// Minimal TOML subset: scalar key = value lines, [section] headers mapped to
// dotted keys, homogeneous scalar arrays, and [[cross_traffic]] tables. This
// covers the whole documented scenario key set; no TOML library ships in the
// toolchain image.
struct TomlValue {
  enum class Kind { String, Number, Bool, Array };
  Kind kind = Kind::Number;
  std::string str;
  double num = 0.0;
  bool boolean = false;
  std::vector<TomlValue> array;
};

struct TomlDoc {
  std::map<std::string, TomlValue> values;
  std::vector<std::map<std::string, TomlValue>> cross_traffic;
};

std::string trim(std::string s) {
  const auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && issp(s.front())) s.erase(s.begin());
  while (!s.empty() && issp(s.back())) s.pop_back();
  return s;
}

[[noreturn]] void fail_line(int line_no, const std::string& msg) {
  throw std::runtime_error("scenario parse error at line " + std::to_string(line_no) + ": " + msg);
}

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

TomlValue parse_scalar(const std::string& raw, int line_no) {
  TomlValue v;
  const std::string s = trim(raw);
  if (s.empty()) fail_line(line_no, "empty value");
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"') fail_line(line_no, "unterminated string");
    v.kind = TomlValue::Kind::String;
    v.str = s.substr(1, s.size() - 2);
    return v;
  }
  if (s == "true" || s == "false") {
    v.kind = TomlValue::Kind::Bool;
    v.boolean = s == "true";
    return v;
  }
  try {
    std::size_t pos = 0;
    v.num = std::stod(s, &pos);
    if (pos != s.size()) fail_line(line_no, "trailing characters after number in '" + s + "'");
  } catch (const std::invalid_argument&) {
    fail_line(line_no, "cannot parse value '" + s + "'");
  }
  v.kind = TomlValue::Kind::Number;
  return v;
}

TomlValue parse_value(const std::string& raw, int line_no) {
  const std::string s = trim(raw);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') fail_line(line_no, "unterminated array");
    TomlValue v;
    v.kind = TomlValue::Kind::Array;
    const std::string inner = s.substr(1, s.size() - 2);
    std::string item;
    bool in_string = false;
    for (const char c : inner) {
      if (c == '"') in_string = !in_string;
      if (c == ',' && !in_string) {
        if (!trim(item).empty()) v.array.push_back(parse_scalar(item, line_no));
        item.clear();
      } else {
        item += c;
      }
    }
    if (!trim(item).empty()) v.array.push_back(parse_scalar(item, line_no));
    return v;
  }
  return parse_scalar(s, line_no);
}

TomlDoc parse_toml(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path.string());
  TomlDoc doc;
  std::string line;
  std::string section;
  bool in_cross_traffic = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.rfind("[[", 0) == 0) {
        if (line != "[[cross_traffic]]") {
          fail_line(line_no, "only [[cross_traffic]] table arrays are supported");
        }
        doc.cross_traffic.emplace_back();
        in_cross_traffic = true;
        continue;
      }
      if (line.back() != ']') fail_line(line_no, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail_line(line_no, "empty section name");
      in_cross_traffic = false;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail_line(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) fail_line(line_no, "empty key");
    const TomlValue value = parse_value(line.substr(eq + 1), line_no);
    if (in_cross_traffic) {
      doc.cross_traffic.back()[key] = value;
    } else {
      const std::string full = section.empty() ? key : section + "." + key;
      if (doc.values.count(full)) fail_line(line_no, "duplicate key '" + full + "'");
      doc.values[full] = value;
    }
  }
  return doc;
}

// Typed accessors; they consume keys so leftovers can be reported as unknown.
class KeyReader {
 public:
  explicit KeyReader(std::map<std::string, TomlValue>& values) : values_(values) {}

  std::optional<TomlValue> take(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    TomlValue v = it->second;
    values_.erase(it);
    return v;
  }

  void number(const std::string& key, double* out) {
    if (auto v = take(key)) {
      require(v->kind == TomlValue::Kind::Number, key, "a number");
      *out = v->num;
    }
  }

  template <typename Int>
  void integer(const std::string& key, Int* out) {
    if (auto v = take(key)) {
      require(v->kind == TomlValue::Kind::Number, key, "an integer");
      require(std::floor(v->num) == v->num, key, "an integer");
      *out = static_cast<Int>(v->num);
    }
  }

  void string(const std::string& key, std::string* out) {
    if (auto v = take(key)) {
      require(v->kind == TomlValue::Kind::String, key, "a string");
      *out = v->str;
    }
  }

  void string_list(const std::string& key, std::vector<std::string>* out) {
    if (auto v = take(key)) {
      require(v->kind == TomlValue::Kind::Array, key, "an array of strings");
      out->clear();
      for (const auto& item : v->array) {
        require(item.kind == TomlValue::Kind::String, key, "an array of strings");
        out->push_back(item.str);
      }
    }
  }

  template <typename Int>
  void integer_list(const std::string& key, std::vector<Int>* out) {
    if (auto v = take(key)) {
      require(v->kind == TomlValue::Kind::Array, key, "an array of integers");
      out->clear();
      for (const auto& item : v->array) {
        require(item.kind == TomlValue::Kind::Number && std::floor(item.num) == item.num, key,
                "an array of integers");
        out->push_back(static_cast<Int>(item.num));
      }
    }
  }

  // AC0..AC3 ordered quadruple applied to a per-AC field.
  template <typename Setter>
  void ac_quad(const std::string& key, Setter setter) {
    std::vector<int> values;
    integer_list(key, &values);
    if (values.empty()) return;
    if (values.size() != kAcCount) {
      throw std::runtime_error("scenario key '" + key + "' must list 4 values (AC0..AC3)");
    }
    for (int i = 0; i < kAcCount; ++i) setter(i, values[static_cast<std::size_t>(i)]);
  }

 private:
  static void require(bool ok, const std::string& key, const char* what) {
    if (!ok) throw std::runtime_error("scenario key '" + key + "' must be " + what);
  }
  std::map<std::string, TomlValue>& values_;
};

}  // namespace

Scenario Scenario::load(const std::filesystem::path& path) {
  TomlDoc doc = parse_toml(path);
  Scenario sc;
  KeyReader r(doc.values);

  std::string trace;
  r.string("trace", &trace);
  if (trace.empty()) throw std::runtime_error("scenario is missing the required 'trace' key");
  sc.trace_path = trace;
  if (sc.trace_path.is_relative()) {
    sc.trace_path = path.parent_path() / sc.trace_path;
  }

  r.string_list("strategies", &sc.strategies);
  r.integer_list("seeds", &sc.seeds);
  r.number("duration_s", &sc.duration_s);
  std::string out_dir;
  r.string("out_dir", &out_dir);
  if (!out_dir.empty()) sc.out_dir = out_dir;
  r.number("playout_deadline_ms", &sc.playout_deadline_ms);

  r.integer("video.mtu", &sc.mtu);
  r.number("video.fps", &sc.fps);

  r.number("mapping.p_roi", &sc.mapping.p_roi);
  r.number("mapping.p_nonroi", &sc.mapping.p_nonroi);
  r.integer("mapping.qth_low", &sc.mapping.qth_low);
  r.integer("mapping.qth_high", &sc.mapping.qth_high);
  r.number("mapping.uniform_p", &sc.uniform_p);

  r.integer("mac.slot_us", &sc.edca.slot_us);
  r.integer("mac.sifs_us", &sc.edca.sifs_us);
  r.integer("mac.overhead_us", &sc.edca.overhead_us);
  r.integer("mac.phy_rate_bps", &sc.edca.phy_rate_bps);
  r.integer("mac.retry_limit", &sc.edca.retry_limit);
  r.ac_quad("mac.aifsn", [&](int i, int v) { sc.edca.ac[static_cast<std::size_t>(i)].aifsn = v; });
  r.ac_quad("mac.cw_min", [&](int i, int v) { sc.edca.ac[static_cast<std::size_t>(i)].cw_min = v; });
  r.ac_quad("mac.cw_max", [&](int i, int v) { sc.edca.ac[static_cast<std::size_t>(i)].cw_max = v; });
  r.ac_quad("mac.queue_capacity",
            [&](int i, int v) { sc.edca.ac[static_cast<std::size_t>(i)].queue_capacity = v; });

  r.string("channel.kind", &sc.channel.kind);
  r.number("channel.p_loss", &sc.channel.p_loss);
  r.number("channel.p_g2b", &sc.channel.p_g2b);
  r.number("channel.p_b2g", &sc.channel.p_b2g);
  r.number("channel.loss_good", &sc.channel.loss_good);
  r.number("channel.loss_bad", &sc.channel.loss_bad);

  if (!doc.values.empty()) {
    std::string unknown;
    for (const auto& [k, v] : doc.values) {
      if (!unknown.empty()) unknown += ", ";
      unknown += k;
    }
    throw std::runtime_error("unknown scenario key(s): " + unknown);
  }

  for (auto& table : doc.cross_traffic) {
    KeyReader cr(table);
    CrossTrafficConfig ct;
    std::string ac = "AC3";
    cr.string("ac", &ac);
    ct.target_ac = ac_from_string(ac);
    cr.integer("packet_size_bytes", &ct.packet_size_bytes);
    cr.number("rate_bps", &ct.rate_bps);
    cr.number("jitter", &ct.jitter_fraction);
    if (!table.empty()) {
      throw std::runtime_error("unknown key(s) in [[cross_traffic]] table");
    }
    sc.cross_traffic.push_back(ct);
  }
  return sc;
}

std::vector<std::string> Scenario::validate() const {
  std::vector<std::string> errors;
  const auto complain = [&](const std::string& msg) { errors.push_back(msg); };

  std::int32_t trace_frames = -1;
  if (!std::filesystem::exists(trace_path)) {
    complain("trace file does not exist: " + trace_path.string());
  } else {
    try {
      trace_frames = load_video_trace(trace_path).frame_count();
    } catch (const std::exception& ex) {
      complain(std::string("trace file invalid: ") + ex.what());
    }
  }

  if (strategies.empty()) complain("at least one strategy is required");
  for (const auto& s : strategies) {
    try {
      strategy_from_string(s);
    } catch (const std::exception& ex) {
      complain(ex.what());
    }
  }
  if (seeds.empty()) complain("at least one seed is required");
  if (duration_s <= 0.0) complain("duration_s must be > 0");
  if (trace_frames > 0 && fps > 0.0) {
    const double trace_duration_s = static_cast<double>(trace_frames) / fps;
    if (duration_s + 1e-9 < trace_duration_s) {
      complain("duration_s (" + std::to_string(duration_s) + ") is shorter than the trace (" +
               std::to_string(trace_duration_s) + " s)");
    }
  }
  if (mtu <= 0) complain("video.mtu must be > 0");
  if (fps <= 0.0) complain("video.fps must be > 0");
  if (uniform_p < 0.0 || uniform_p > 1.0) complain("mapping.uniform_p must be in [0,1]");

  try {
    mapping.validate(edca.ac[static_cast<int>(AcIndex::AC2_Video)].queue_capacity);
  } catch (const std::exception& ex) {
    complain(ex.what());
  }
  try {
    edca.validate();
  } catch (const std::exception& ex) {
    complain(ex.what());
  }
  try {
    channel.build();
  } catch (const std::exception& ex) {
    complain(ex.what());
  }
  for (std::size_t i = 0; i < cross_traffic.size(); ++i) {
    try {
      cross_traffic[i].validate();
    } catch (const std::exception& ex) {
      complain("cross_traffic[" + std::to_string(i) + "]: " + ex.what());
    }
  }
  return errors;
}

void Scenario::validate_or_throw() const {
  const auto errors = validate();
  if (errors.empty()) return;
  std::string msg = "scenario validation failed:";
  for (const auto& e : errors) msg += "\n  - " + e;
  throw std::runtime_error(msg);
}

}  // namespace roisim
