#include "sessionscope/annotations.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json_util.hpp"
#include "sessionscope/replay.hpp"

namespace sessionscope {

namespace {

std::optional<std::uint64_t> numeric_suffix(const std::string& id) {
  if (id.size() < 2 || id[0] != 'n') return std::nullopt;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(id.data() + 1, id.data() + id.size(), v);
  if (ec != std::errc{} || ptr != id.data() + id.size()) return std::nullopt;
  return v;
}

}  // namespace

const Annotation& AnnotationStore::add(const Vec3& position, double t, std::string text,
                                       std::optional<std::string> author) {
  if (text.empty()) throw Error(ErrorKind::Argument, "annotation text must not be empty");
  if (!is_finite(position) || !std::isfinite(t)) {
    throw Error(ErrorKind::Argument, "annotation anchor must be finite");
  }
  Annotation note{"n" + std::to_string(next_id_++), position, t, std::move(text), clock_(),
                  std::move(author)};
  notes_.push_back(std::move(note));
  return notes_.back();
}

std::vector<Annotation> AnnotationStore::query(std::optional<TimeWindow> window,
                                               std::optional<RadiusQuery> radius) const {
  std::vector<Annotation> out;
  for (const auto& n : notes_) {
    if (window && (n.anchor_t < window->t0 || n.anchor_t > window->t1)) continue;
    if (radius && norm(n.anchor_position - radius->center) > radius->radius) continue;
    out.push_back(n);
  }
  std::stable_sort(out.begin(), out.end(), [](const Annotation& a, const Annotation& b) {
    return a.anchor_t < b.anchor_t || (a.anchor_t == b.anchor_t && a.id < b.id);
  });
  return out;
}

std::string AnnotationStore::to_jsonl() const {
  std::string out;
  for (const auto& n : notes_) {
    detail::ordered_json j;
    j["rec"] = "note";
    j["id"] = n.id;
    j["p"] = detail::to_json_array(n.anchor_position);
    j["t"] = n.anchor_t;
    j["text"] = n.text;
    j["created_at"] = to_iso8601(n.created_at);
    if (n.author) j["author"] = *n.author;
    out += j.dump();
    out += '\n';
  }
  return out;
}

void AnnotationStore::from_jsonl(std::string_view text) {
  std::vector<Annotation> notes;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::uint64_t next = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    detail::json j;
    try {
      j = detail::json::parse(line);
    } catch (const detail::json::exception& e) {
      throw Error(ErrorKind::Parse, std::string("malformed JSON: ") + e.what(), line_no);
    }
    if (!j.is_object()) throw Error(ErrorKind::Parse, "note is not a JSON object", line_no);
    const detail::FieldReader r(j, line_no);
    if (r.string("rec") != "note") r.fail("expected a note record");
    Annotation n;
    n.id = r.string("id");
    n.anchor_position = r.vec3("p");
    n.anchor_t = r.number("t");
    n.text = r.string("text");
    try {
      n.created_at = parse_iso8601(r.string("created_at"));
    } catch (const Error& e) {
      r.fail(e.what());
    }
    if (r.has("author")) n.author = r.string("author");
    if (std::any_of(notes.begin(), notes.end(), [&](const Annotation& a) { return a.id == n.id; })) {
      r.fail("duplicate note id '" + n.id + "'");
    }
    if (auto k = numeric_suffix(n.id)) next = std::max(next, *k + 1);
    notes.push_back(std::move(n));
  }
  notes_ = std::move(notes);
  next_id_ = next;
}

std::size_t AnnotationStore::save(const std::filesystem::path& path) const {
  const std::string text = to_jsonl();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + path.string() + "'");
  return notes_.size();
}

std::size_t AnnotationStore::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  from_jsonl(buf.str());
  return notes_.size();
}

const Annotation& annotate(ReplaySession& replay, AnnotationStore& store,
                           MetricsRecorder* metrics, const Vec3& position, std::string text,
                           std::optional<std::string> author) {
  const double t = replay.transport().t;
  const Annotation& note = store.add(position, t, std::move(text), std::move(author));
  replay.auto_pause();
  if (metrics) metrics->record(MetricKind::NoteGenerated);
  return note;
}

}  // namespace sessionscope
