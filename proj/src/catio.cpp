#include "laxfact/catio.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "laxfact/errors.hpp"

namespace laxfact {

namespace {

using nlohmann::json;

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Line numbers of the top-level keys and of each element of top-level arrays.
struct LineIndex {
  std::map<std::string, std::size_t> key_line;
  std::map<std::string, std::vector<std::size_t>> element_lines;

  std::size_t element(const std::string& key, std::size_t i) const {
    if (auto it = element_lines.find(key); it != element_lines.end() && i < it->second.size()) {
      return it->second[i];
    }
    return key_line_of(key);
  }
  std::size_t key_line_of(const std::string& key) const {
    auto it = key_line.find(key);
    return it == key_line.end() ? 0 : it->second;
  }
};

LineIndex index_lines(std::string_view text) {
  LineIndex idx;
  std::size_t line = 1;
  int depth = 0;
  bool in_string = false;
  bool escape = false;
  std::string current_string;
  std::string last_key;
  std::string top_key;
  bool top_is_array = false;
  bool expecting_element = false;
  std::size_t string_start_line = 0;

  for (char ch : text) {
    if (in_string) {
      if (escape) {
        escape = false;
        current_string.push_back(ch);
      } else if (ch == '\\') {
        escape = true;
      } else if (ch == '"') {
        in_string = false;
        if (depth == 1) last_key = current_string;
      } else {
        current_string.push_back(ch);
      }
      if (ch == '\n') ++line;
      continue;
    }
    if (ch == '\n') {
      ++line;
      continue;
    }
    if (ch == ' ' || ch == '\t' || ch == '\r') continue;

    if (depth == 2 && top_is_array && expecting_element && ch != ']' && ch != ',') {
      idx.element_lines[top_key].push_back(line);
      expecting_element = false;
    }

    switch (ch) {
      case '"':
        in_string = true;
        current_string.clear();
        string_start_line = line;
        break;
      case ':':
        if (depth == 1) {
          top_key = last_key;
          idx.key_line[top_key] = string_start_line;
        }
        break;
      case '[':
      case '{':
        ++depth;
        if (depth == 2) {
          top_is_array = ch == '[';
          expecting_element = top_is_array;
        }
        break;
      case ']':
      case '}':
        --depth;
        break;
      case ',':
        if (depth == 2 && top_is_array) expecting_element = true;
        break;
      default:
        break;
    }
  }
  return idx;
}

[[noreturn]] void fail(const std::string& what, std::size_t line) { throw FormatError(what, line); }

const std::string& as_name(const json& v, const std::string& what, std::size_t line) {
  if (!v.is_string()) fail(what + " must be a string", line);
  return v.get_ref<const std::string&>();
}

}  // namespace

CategoryData parse_category(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(std::string("JSON syntax error: ") + e.what(), line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  const LineIndex lines = index_lines(text);

  if (!doc.is_object()) fail("category description must be a JSON object", 1);
  for (const char* key : {"objects", "morphisms", "identities", "compose"}) {
    if (!doc.contains(key)) fail(std::string("missing key \"") + key + "\"", 1);
  }

  CategoryData d;
  std::unordered_map<std::string, std::uint32_t> objects;
  const json& objs = doc["objects"];
  if (!objs.is_array()) fail("\"objects\" must be an array", lines.key_line_of("objects"));
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const auto& name = as_name(objs[i], "object name", lines.element("objects", i));
    if (!objects.emplace(name, static_cast<std::uint32_t>(d.objects.size())).second) {
      fail("duplicate object \"" + name + "\"", lines.element("objects", i));
    }
    d.objects.push_back(name);
  }

  std::unordered_map<std::string, std::uint32_t> morphisms;
  const json& mors = doc["morphisms"];
  if (!mors.is_array()) fail("\"morphisms\" must be an array", lines.key_line_of("morphisms"));
  for (std::size_t i = 0; i < mors.size(); ++i) {
    const std::size_t line = lines.element("morphisms", i);
    const json& m = mors[i];
    if (!m.is_object() || !m.contains("name") || !m.contains("dom") || !m.contains("cod")) {
      fail("morphism entry needs \"name\", \"dom\" and \"cod\"", line);
    }
    const auto& name = as_name(m["name"], "morphism name", line);
    auto resolve_obj = [&](const char* key) {
      const auto& o = as_name(m[key], std::string("morphism ") + key, line);
      auto it = objects.find(o);
      if (it == objects.end()) fail("morphism \"" + name + "\" refers to unknown object \"" + o + "\"", line);
      return it->second;
    };
    const std::uint32_t dom = resolve_obj("dom");
    const std::uint32_t cod = resolve_obj("cod");
    if (!morphisms.emplace(name, static_cast<std::uint32_t>(d.morphisms.size())).second) {
      fail("duplicate morphism \"" + name + "\"", line);
    }
    d.morphisms.push_back({name, dom, cod});
  }

  auto resolve_mor = [&](const json& v, std::size_t line) {
    const auto& name = as_name(v, "morphism reference", line);
    auto it = morphisms.find(name);
    if (it == morphisms.end()) fail("unknown morphism \"" + name + "\"", line);
    return it->second;
  };

  d.identities.assign(d.objects.size(), std::nullopt);
  const json& ids = doc["identities"];
  const std::size_t ids_line = lines.key_line_of("identities");
  if (!ids.is_object()) fail("\"identities\" must be an object", ids_line);
  for (const auto& [obj, mor] : ids.items()) {
    auto it = objects.find(obj);
    if (it == objects.end()) fail("identity declared for unknown object \"" + obj + "\"", ids_line);
    d.identities[it->second] = resolve_mor(mor, ids_line);
  }

  const json& comp = doc["compose"];
  if (!comp.is_array()) fail("\"compose\" must be an array", lines.key_line_of("compose"));
  for (std::size_t i = 0; i < comp.size(); ++i) {
    const std::size_t line = lines.element("compose", i);
    const json& e = comp[i];
    if (!e.is_array() || e.size() != 3) fail("compose entry must be [g, f, gf]", line);
    d.compose.push_back({resolve_mor(e[0], line), resolve_mor(e[1], line), resolve_mor(e[2], line), line});
  }

  if (doc.contains("leq")) {
    const json& leq = doc["leq"];
    if (!leq.is_array()) fail("\"leq\" must be an array", lines.key_line_of("leq"));
    for (std::size_t i = 0; i < leq.size(); ++i) {
      const std::size_t line = lines.element("leq", i);
      const json& e = leq[i];
      if (!e.is_array() || e.size() != 2) fail("leq entry must be [f, g]", line);
      d.leq.push_back({resolve_mor(e[0], line), resolve_mor(e[1], line), line});
    }
  }
  return d;
}

CategoryData read_category_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string(), 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_category(buf.str());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what(), 0);
  }
}

FinOrdCategory load_category(const std::filesystem::path& path) {
  const CategoryData data = read_category_file(path);
  try {
    return FinOrdCategory::build(data, OrderMode::Closure);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what(), 0);
  }
}

std::string export_category(const FinOrdCategory& cat) {
  std::vector<MorId> order(cat.morphism_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = MorId{static_cast<std::uint32_t>(i)};
  std::stable_sort(order.begin(), order.end(), [&](MorId a, MorId b) {
    if (cat.dom(a) != cat.dom(b)) return cat.dom(a) < cat.dom(b);
    if (cat.cod(a) != cat.cod(b)) return cat.cod(a) < cat.cod(b);
    return a < b;
  });
  std::vector<std::size_t> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i].index] = i;

  auto q = [](const std::string& s) { return json(s).dump(); };
  std::ostringstream out;
  out << "{\n  \"objects\": [";
  for (std::size_t a = 0; a < cat.object_count(); ++a) {
    out << (a == 0 ? "" : ", ") << q(cat.object_name(ObjId{static_cast<std::uint32_t>(a)}));
  }
  out << "],\n  \"morphisms\": [\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    const MorId f = order[i];
    out << "    {\"name\": " << q(cat.name(f)) << ", \"dom\": " << q(cat.object_name(cat.dom(f)))
        << ", \"cod\": " << q(cat.object_name(cat.cod(f))) << "}" << (i + 1 < order.size() ? "," : "")
        << "\n";
  }
  out << "  ],\n  \"identities\": {";
  bool first = true;
  for (std::size_t a = 0; a < cat.object_count(); ++a) {
    const ObjId o{static_cast<std::uint32_t>(a)};
    if (!cat.has_identity(o)) continue;
    out << (first ? "" : ", ") << q(cat.object_name(o)) << ": " << q(cat.name(cat.identity(o)));
    first = false;
  }
  out << "},\n  \"compose\": [\n";
  std::vector<std::string> lines;
  for (MorId f : order) {
    std::vector<MorId> gs(cat.out(cat.cod(f)).begin(), cat.out(cat.cod(f)).end());
    std::sort(gs.begin(), gs.end(), [&](MorId a, MorId b) { return rank[a.index] < rank[b.index]; });
    for (MorId g : gs) {
      if (auto gf = cat.try_compose(g, f)) {
        lines.push_back("    [" + q(cat.name(g)) + ", " + q(cat.name(f)) + ", " + q(cat.name(*gf)) + "]");
      }
    }
  }
  for (std::size_t i = 0; i < lines.size(); ++i) out << lines[i] << (i + 1 < lines.size() ? "," : "") << "\n";
  out << "  ],\n  \"leq\": [\n";
  lines.clear();
  for (MorId f : order) {
    const auto hom = cat.hom(cat.dom(f), cat.cod(f));
    std::vector<MorId> above;
    cat.up_set(f).for_each([&](std::size_t j) {
      if (hom[j] != f) above.push_back(hom[j]);
    });
    std::sort(above.begin(), above.end(), [&](MorId a, MorId b) { return rank[a.index] < rank[b.index]; });
    for (MorId g : above) lines.push_back("    [" + q(cat.name(f)) + ", " + q(cat.name(g)) + "]");
  }
  for (std::size_t i = 0; i < lines.size(); ++i) out << lines[i] << (i + 1 < lines.size() ? "," : "") << "\n";
  out << "  ]\n}\n";
  return out.str();
}

}  // namespace laxfact
