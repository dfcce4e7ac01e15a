#include "structrec/synth/generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string_view>

namespace structrec::synth {

namespace {

// mt19937_64 output is fixed by the standard; distributions are not, so
// sampling is done by hand.
struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(g() % n); }
  double unit() { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
};

class Zipf {
 public:
  Zipf(std::size_t n, double s) : cdf_(n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) cdf_[i] = acc += 1.0 / std::pow(static_cast<double>(i + 1), s);
    for (auto& c : cdf_) c /= acc;
  }
  std::size_t sample(Rng& rng) const {
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), rng.unit());
    return std::min(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
  }

 private:
  std::vector<double> cdf_;
};

constexpr std::array kNouns = {
    "account", "adapter", "address", "amount", "asset",   "balance", "buffer",  "cache",   "channel", "client",
    "color",   "config",  "contact", "content", "context", "counter", "cursor",  "data",    "device",  "dialog",
    "entry",   "event",   "field",   "file",    "filter",  "folder",  "frame",   "group",   "handler", "header",
    "height",  "icon",    "image",   "index",   "item",    "key",     "label",   "layout",  "level",   "limit",
    "list",    "location", "message", "mode",   "model",   "name",    "node",    "offset",  "order",   "owner",
    "page",    "panel",   "path",    "player",  "point",   "position", "price",  "queue",   "record",  "region",
    "request", "result",  "row",     "score",   "screen",  "session", "size",    "socket",  "source",  "state",
    "status",  "stream",  "style",   "table",   "target",  "task",    "text",    "timer",   "title",   "token",
    "track",   "user",    "value",   "view",    "width",   "window",  "worker",  "zone"};

constexpr std::array kVerbs = {"add",   "apply", "build",  "check", "clear",   "close",  "compute", "create",
                               "fetch", "find",  "handle", "init",  "load",    "merge",  "notify",  "open",
                               "parse", "post",  "read",   "reset", "resolve", "save",   "send",    "set",
                               "show",  "sort",  "start",  "stop",  "sync",    "update", "validate", "write"};

constexpr std::array kTypes = {"Widget", "Record", "Payload", "Shape",  "Token",   "Session", "Entry",  "Item",
                               "Node",   "Packet", "Sample",  "Marker", "Segment", "Profile", "Ticket", "Order",
                               "Vertex", "Tile",   "Frame",   "Chunk",  "Track",   "Slot",    "Batch",  "Rule"};

constexpr std::array kLocalNames = {"i",     "j",     "k",      "n",    "s",      "sb",    "buf",    "item",
                                    "value", "result", "count", "tmp",  "data",   "entry", "it",     "line",
                                    "reader", "out",  "in",     "e",    "ex",     "list",  "map",    "opts",
                                    "bmp",   "cursor", "editor", "obj", "total",  "idx",   "current", "next",
                                    "node",  "key",   "text",   "size", "offset", "start", "end",    "acc"};

// Idioms: one statement or block per line, two spaces per nesting level.
// $v<d> locals, $F<d> fields, $M<d> callees, $T<d> types, $S a fresh string
// literal, $N a fresh number.
const std::vector<std::vector<std::string>> kIdioms = {
    {"if ($F0 == null) {", "  $F0 = new $T0($S);", "}"},
    {"StringBuilder $v0 = new StringBuilder();", "for (int $v1 = 0; $v1 < $F0.size(); $v1++) {",
     "  $v0.append($F0.get($v1)).append($S);", "}", "$F1 = $v0.toString();"},
    {"try {", "  InputStream $v0 = $F0.open($S);", "  Bitmap $v1 = BitmapFactory.decodeStream($v0);",
     "  $F1.setImageBitmap($v1);", "  $v0.close();", "} catch (IOException $v2) {", "  Log.e($S, $S, $v2);", "}"},
    {"Map<String, Integer> $v0 = new HashMap<String, Integer>();", "for (String $v1 : $F0) {",
     "  Integer $v2 = $v0.get($v1);", "  $v0.put($v1, $v2 == null ? 1 : $v2 + $N);", "}", "$F1.$M0($v0);"},
    {"BufferedReader $v0 = new BufferedReader(new FileReader($S));", "String $v1;",
     "while (($v1 = $v0.readLine()) != null) {", "  $F0.add($v1.trim());", "}", "$v0.close();"},
    {"if ($F0 < $N) {", "  throw new IllegalArgumentException($S + $F0);", "}"},
    {"$F0.setOnClickListener(new View.OnClickListener() {", "  public void onClick(View $v0) {", "    $M0($S);",
     "  }", "});"},
    {"Cursor $v0 = $F0.query($S, null, null, null, null, null, null);", "if ($v0.moveToFirst()) {", "  do {",
     "    $F1.add($v0.getString($N));", "  } while ($v0.moveToNext());", "}", "$v0.close();"},
    {"synchronized ($F0) {", "  $F1 += $N;", "  $F0.notifyAll();", "}"},
    {"int[] $v0 = new int[$F0.length + $N];", "System.arraycopy($F0, 0, $v0, 0, $F0.length);", "$F0 = $v0;"},
    {"Intent $v0 = new Intent($S);", "$v0.putExtra($S, $F0);", "$v0.putExtra($S, $N);", "$F1.startActivity($v0);"},
    {"String $v0 = String.format($S, $F0, $F1);", "Log.d($S, $v0);"},
    {"if ($F0 > $N) {", "  $F1 = $S;", "} else if ($F0 > $N) {", "  $F1 = $S;", "} else {", "  $F1 = $S;", "}"},
    {"if ($F0 instanceof $T0) {", "  $T0 $v0 = ($T0) $F0;", "  $v0.$M0($S);", "}"},
    {"double $v0 = 0;", "for (int $v1 = 0; $v1 < $F0.length; $v1++) {", "  $v0 += $F0[$v1] * $N;", "}",
     "$F1 = $v0 / $F0.length;"},
    {"try {", "  Thread.sleep($N);", "} catch (InterruptedException $v0) {", "  Thread.currentThread().interrupt();",
     "}"},
    {"JSONObject $v0 = new JSONObject();", "$v0.put($S, $F0);", "$v0.put($S, $F1);", "$F2.$M0($v0.toString());"},
    {"int $v0 = 0;", "while ($v0 < $F0.size() && $F0.get($v0) != null) {", "  $v0++;", "}", "$F1 = $v0;"},
    {"Iterator<$T0> $v0 = $F0.iterator();", "while ($v0.hasNext()) {", "  if ($v0.next().$M0()) {",
     "    $v0.remove();", "  }", "}"},
    {"SharedPreferences.Editor $v0 = $F0.edit();", "$v0.putString($S, $F1);", "$v0.putInt($S, $N);",
     "$v0.apply();"},
    {"$F0.$M0($S, $N);", "$F1.$M1($F0);"},
    {"$F0 = $F1 != null ? $F1.$M0() : $S;"},
    {"for (int $v0 = 0; $v0 < $N; $v0++) {", "  for (int $v1 = 0; $v1 < $F0[$v0].length; $v1++) {",
     "    $F0[$v0][$v1] = $v0 * $v1 + $N;", "  }", "}"},
    {"OutputStream $v0 = null;", "try {", "  $v0 = new FileOutputStream($S);", "  $v0.write($F0);", "} finally {",
     "  if ($v0 != null) {", "    $v0.close();", "  }", "}"},
    {"List<$T0> $v0 = new ArrayList<$T0>();", "for ($T0 $v1 : $F0) {", "  if ($v1.$M0() > $N) {",
     "    $v0.add($v1);", "  }", "}", "$F1 = $v0;"},
    {"final BitmapFactory.Options $v0 = new BitmapFactory.Options();", "$v0.inSampleSize = $N;",
     "InputStream $v1 = $F0.open($S);", "Bitmap $v2 = BitmapFactory.decodeStream($v1, null, $v0);",
     "$F1.setImageBitmap($v2);"},
    {"if ($F0 != null && !$F0.isEmpty()) {", "  $F1.$M0($F0.get(0));", "  $F0.remove(0);", "}"},
    {"long $v0 = System.currentTimeMillis();", "$F0.$M0($S);", "$F1 = System.currentTimeMillis() - $v0;"},
};

const std::vector<std::string> kHeaders = {
    "Log.d($S, $S);",          "int $v0 = $F0 + $N;", "String $v0 = $S + $F0;",
    "$F0.$M0($S);",             "$F0 = $N;",           "long $v0 = System.currentTimeMillis() - $N;",
    "$F0.$M0($S, $F1);",        "boolean $v0 = $F0.$M0($S);"};

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

struct Vocab {
  std::vector<std::string> fields, callees;
  Zipf field_zipf, callee_zipf, idiom_zipf;

  explicit Vocab(Rng& rng)
      : field_zipf(2000, 1.0), callee_zipf(1500, 1.0), idiom_zipf(kIdioms.size(), 0.8) {
    auto pick = [&](auto& pool) { return std::string(pool[rng.below(pool.size())]); };
    for (std::size_t i = 0; i < 2000; ++i) fields.push_back(pick(kNouns) + capitalize(pick(kNouns)) + std::to_string(i % 7));
    for (std::size_t i = 0; i < 1500; ++i) callees.push_back(pick(kVerbs) + capitalize(pick(kNouns)) + std::to_string(i % 5));
  }
};

// A method before rendering: local names are markers "@<k>@" resolved at
// render time so twins can rename them.
struct Draft {
  std::string ret;
  std::vector<std::string> header;
  std::vector<std::string> rest;
  std::size_t locals = 0;
};

std::string fresh_string(Rng& rng) {
  std::string s = "\"";
  std::size_t len = rng.between(5, 9);
  for (std::size_t i = 0; i < len; ++i) s += static_cast<char>('a' + rng.below(26));
  return s + "\"";
}

class Instantiator {
 public:
  Instantiator(Rng& rng, const Vocab& vocab, std::size_t& locals) : rng_(rng), vocab_(vocab), locals_(locals) {}

  std::vector<std::string> run(const std::vector<std::string>& lines) {
    std::array<std::string, 4> v, f, m, t;
    std::vector<std::string> out;
    for (const auto& line : lines) {
      std::string s;
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] != '$' || i + 1 >= line.size()) {
          s += line[i];
          continue;
        }
        char c = line[i + 1];
        if (c == 'S') {
          s += fresh_string(rng_);
          ++i;
        } else if (c == 'N') {
          s += std::to_string(rng_.between(2, 99999));
          ++i;
        } else {
          auto d = static_cast<std::size_t>(line[i + 2] - '0');
          std::string* slot = c == 'v' ? &v[d] : c == 'F' ? &f[d] : c == 'M' ? &m[d] : &t[d];
          if (slot->empty()) *slot = fill(c);
          s += *slot;
          i += 2;
        }
      }
      out.push_back(std::move(s));
    }
    return out;
  }

 private:
  std::string fill(char c) {
    switch (c) {
      case 'v': return "@" + std::to_string(locals_++) + "@";
      case 'F': return vocab_.fields[vocab_.field_zipf.sample(rng_)];
      case 'M': return vocab_.callees[vocab_.callee_zipf.sample(rng_)];
      default: return kTypes[rng_.below(kTypes.size())];
    }
  }

  Rng& rng_;
  const Vocab& vocab_;
  std::size_t& locals_;
};

std::vector<std::string> local_names(Rng& rng, std::size_t n) {
  std::vector<std::string> pool(kLocalNames.begin(), kLocalNames.end());
  for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng.below(i)]);
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k)
    out.push_back(k < pool.size() ? pool[k] : pool[k % pool.size()] + std::to_string(k / pool.size()));
  return out;
}

std::string resolve(const std::string& line, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] != '@') {
      out += line[i];
      continue;
    }
    std::size_t j = line.find('@', i + 1);
    out += names[std::stoul(line.substr(i + 1, j - i - 1))];
    i = j;
  }
  return out;
}

struct Method {
  std::string name;
  Draft draft;
  std::vector<std::string> names;
};

std::string render_method(const Method& m) {
  std::string s = "  public " + m.draft.ret + " " + m.name + "() {\n";
  for (const auto* part : {&m.draft.header, &m.draft.rest})
    for (const auto& line : *part) s += "    " + resolve(line, m.names) + "\n";
  return s + "  }\n";
}

std::string render_class(const std::string& package, const std::string& name, const std::vector<Method>& methods) {
  std::string s = "package " + package + ";\n\npublic class " + name + " {\n";
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (i) s += "\n";
    s += render_method(methods[i]);
  }
  return s + "}\n";
}

struct Generator {
  const SynthOptions& opt;
  Rng rng;
  Vocab vocab;
  std::size_t serial = 0;

  explicit Generator(const SynthOptions& o) : opt(o), rng(o.seed), vocab(rng) {}

  std::string method_name() {
    return std::string(kVerbs[rng.below(kVerbs.size())]) + capitalize(kNouns[rng.below(kNouns.size())]) +
           std::to_string(serial++);
  }

  void append_idiom(Draft& d, const std::vector<std::string>& idiom) {
    Instantiator inst(rng, vocab, d.locals);
    for (auto& l : inst.run(idiom)) d.rest.push_back(std::move(l));
  }

  Method make_method() {
    Method m;
    m.name = method_name();
    Draft& d = m.draft;
    std::size_t h = rng.between(1, 3);
    for (std::size_t i = 0; i < h; ++i) {
      Instantiator inst(rng, vocab, d.locals);
      d.header.push_back(inst.run({kHeaders[rng.below(kHeaders.size())]})[0]);
    }
    std::size_t idioms = rng.between(2, 4);
    for (std::size_t i = 0; i < idioms; ++i) append_idiom(d, kIdioms[vocab.idiom_zipf.sample(rng)]);
    if (rng.chance(0.5)) {
      d.ret = kTypes[rng.below(kTypes.size())];
      d.rest.push_back("return " + vocab.fields[vocab.field_zipf.sample(rng)] + ";");
    } else {
      d.ret = "void";
    }
    m.names = local_names(rng, d.locals);
    return m;
  }

  // Same first lines as `origin`, then one short idiom.
  Method make_confuser(const Method& origin) {
    Method m;
    m.name = method_name();
    m.draft.ret = "void";
    m.draft.header = origin.draft.header;
    m.draft.locals = origin.draft.locals;
    for (;;) {
      const auto& idiom = kIdioms[vocab.idiom_zipf.sample(rng)];
      if (idiom.size() + m.draft.header.size() < 12) {
        append_idiom(m.draft, idiom);
        break;
      }
    }
    m.names = origin.names;
    m.names.resize(origin.draft.locals);
    auto extra = local_names(rng, m.draft.locals);
    for (std::size_t k = origin.draft.locals; k < m.draft.locals; ++k) m.names.push_back(extra[k]);
    return m;
  }

  Method make_twin(const Method& origin) {
    Method m = origin;
    m.name = method_name();
    for (auto& n : m.names) n += "Alt";
    return m;
  }
};

}  // namespace

SynthCorpus generate_corpus(const SynthOptions& options) {
  if (options.methods_per_file == 0 || options.files_per_project == 0)
    throw std::invalid_argument("methods_per_file and files_per_project must be positive");
  Generator gen(options);
  SynthCorpus out;
  auto& st = out.stats;

  const auto n_confusers = static_cast<std::size_t>(static_cast<double>(options.methods) * options.confuser_rate /
                                                    (1.0 + options.confuser_rate));
  const auto n_twins = static_cast<std::size_t>(static_cast<double>(options.methods) * options.twin_rate);
  const std::size_t n_plain = options.methods - std::min(options.methods, n_confusers + n_twins);

  std::vector<Method> methods;
  methods.reserve(options.methods);
  for (std::size_t i = 0; i < n_plain; ++i) methods.push_back(gen.make_method());
  for (std::size_t i = 0; i < n_confusers && n_plain; ++i, ++st.confusers)
    methods.push_back(gen.make_confuser(methods[gen.rng.below(n_plain)]));
  for (std::size_t i = 0; i < n_twins && n_plain; ++i, ++st.twins)
    methods.push_back(gen.make_twin(methods[gen.rng.below(n_plain)]));
  for (std::size_t i = methods.size(); i > 1; --i) std::swap(methods[i - 1], methods[gen.rng.below(i)]);
  st.methods = methods.size();

  struct FileDraft {
    std::string project, package, cls;
    std::vector<Method> methods;
  };
  std::vector<FileDraft> files;
  for (std::size_t i = 0; i < methods.size();) {
    std::size_t f = files.size();
    std::size_t proj = f / options.files_per_project;
    std::size_t take = std::min(methods.size() - i, gen.rng.between(1, 2 * options.methods_per_file - 1));
    FileDraft fd;
    fd.project = "project" + std::to_string(proj);
    fd.package = "com." + fd.project + "." + kNouns[gen.rng.below(kNouns.size())];
    fd.cls = capitalize(kNouns[gen.rng.below(kNouns.size())]) + capitalize(kNouns[gen.rng.below(kNouns.size())]) +
             std::to_string(f);
    fd.methods.assign(methods.begin() + static_cast<std::ptrdiff_t>(i),
                      methods.begin() + static_cast<std::ptrdiff_t>(i + take));
    files.push_back(std::move(fd));
    i += take;
  }

  // Method-level duplicates: same body under a new name in another file.
  for (std::size_t i = 0; i < options.duplicate_methods && !files.empty(); ++i, ++st.duplicate_methods) {
    const auto& src = files[gen.rng.below(files.size())];
    Method copy = src.methods[gen.rng.below(src.methods.size())];
    copy.name = gen.method_name();
    files[gen.rng.below(files.size())].methods.push_back(std::move(copy));
  }

  auto path_of = [](const FileDraft& fd) {
    std::string p = fd.project + "/src/";
    for (char c : fd.package) p += c == '.' ? '/' : c;
    return p + "/" + fd.cls + ".java";
  };
  for (const auto& fd : files) out.files.push_back({path_of(fd), render_class(fd.package, fd.cls, fd.methods)});

  const std::size_t n_projects = files.empty() ? 0 : (files.size() - 1) / options.files_per_project + 1;
  st.projects = n_projects;

  // File-level duplicates land in projects other than project0, which is
  // mirrored whole below.
  if (n_projects > 1) {
    for (std::size_t i = 0; i < options.duplicate_files; ++i, ++st.duplicate_files) {
      const auto& src = out.files[gen.rng.below(files.size())];
      std::size_t proj = 1 + gen.rng.below(n_projects - 1);
      out.files.push_back({"project" + std::to_string(proj) + "/copied/Copy" + std::to_string(i) + ".java", src.text});
    }
  }
  if (n_projects > 0) {
    std::vector<GeneratedFile> mirror;
    for (std::size_t p = 0; p < options.duplicate_projects; ++p, ++st.duplicate_projects)
      for (const auto& f : out.files)
        if (f.path.rfind("project0/", 0) == 0)
          mirror.push_back({"zmirror" + std::to_string(p) + f.path.substr(8), f.text});
    for (auto& f : mirror) out.files.push_back(std::move(f));
  }
  st.files = out.files.size();
  return out;
}

void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& root) {
  for (const auto& f : corpus.files) {
    auto p = root / f.path;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + p.string());
    os << f.text;
  }
}

}  // namespace structrec::synth
