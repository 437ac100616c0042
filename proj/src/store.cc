// Copyright 2026 The Conditor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "conditor/store.h"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "conditor/resources.h"

namespace conditor {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kRecordMagic = "CNDRREC1";
constexpr std::string_view kIndexMagic = "CNDRIDX1";
constexpr std::string_view kManifestHeader = "conditor-store 1";
constexpr std::string_view kManifestName = "MANIFEST";
constexpr std::string_view kDescriptorName = "descriptor";

// Descriptor type name -> file stem.
const std::map<std::string, std::string, std::less<>> &table_files() {
  static const std::map<std::string, std::string, std::less<>> files = {
      {"Topic", "topics"},
      {"DateFact", "datefacts"},
      {"Occurrence", "occurrences"},
      {"Association", "associations"},
      {"UnresolvedRef", "unresolved"},
  };
  return files;
}

const std::set<std::string, std::less<>> &mandatory_types() {
  static const std::set<std::string, std::less<>> types = {"Topic", "DateFact", "Occurrence",
                                                           "Association"};
  return types;
}

std::uint32_t crc_of(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large inputs in chunks.
  while (!bytes.empty()) {
    const std::size_t n = std::min<std::size_t>(bytes.size(), 1u << 30);
    crc = crc32(crc, reinterpret_cast<const Bytef *>(bytes.data()), static_cast<uInt>(n));
    bytes.remove_prefix(n);
  }
  return static_cast<std::uint32_t>(crc);
}

// ---- little-endian encoding ----

void put_u32(std::string &out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string &out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_str(std::string &out, std::string_view s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out += s;
}

class Reader {
 public:
  Reader(std::string_view data, std::string what) : data_(data), what_(std::move(what)) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += 4;
    return v;
  }

  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += 8;
    return v;
  }

  std::string_view bytes(std::size_t n) {
    need(n);
    std::string_view v = data_.substr(pos_, n);
    pos_ += n;
    return v;
  }

  std::string str() { return std::string(bytes(u32())); }

  std::size_t pos() const { return pos_; }
  void seek(std::size_t pos) {
    if (pos > data_.size()) fail();
    pos_ = pos;
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) fail();
  }
  [[noreturn]] void fail() const { throw StoreError("truncated " + what_); }

  std::string_view data_;
  std::size_t pos_ = 0;
  std::string what_;
};

// ---- records ----

using Fields = std::map<std::string, std::vector<std::string>>;

struct PendingRecord {
  TopicId key = 0;
  std::string payload;
};

std::string encode_payload(TopicId key, const Fields &fields) {
  std::string out;
  put_u64(out, key);
  put_u32(out, static_cast<std::uint32_t>(fields.size()));
  for (const auto &[name, values] : fields) {
    put_str(out, name);
    put_u32(out, static_cast<std::uint32_t>(values.size()));
    for (const std::string &v : values) put_str(out, v);
  }
  return out;
}

// Writes the .dat and .idx images for one table. Records sharing a key
// must be adjacent in `records`.
std::pair<std::string, std::string> encode_table(const std::vector<PendingRecord> &records) {
  std::string data(kRecordMagic);
  put_u32(data, static_cast<std::uint32_t>(records.size()));
  std::vector<std::tuple<TopicId, std::uint64_t, std::uint32_t>> slots;
  for (const PendingRecord &r : records) {
    if (slots.empty() || std::get<0>(slots.back()) != r.key) {
      slots.emplace_back(r.key, data.size(), 0);
    }
    ++std::get<2>(slots.back());
    put_u32(data, static_cast<std::uint32_t>(r.payload.size()));
    put_u32(data, crc_of(r.payload));
    data += r.payload;
  }
  std::sort(slots.begin(), slots.end());
  std::string index(kIndexMagic);
  put_u32(index, static_cast<std::uint32_t>(slots.size()));
  for (const auto &[key, offset, count] : slots) {
    put_u64(index, key);
    put_u64(index, offset);
    put_u32(index, count);
  }
  return {std::move(data), std::move(index)};
}

template <typename Int>
Int parse_number(const std::string &text, std::string_view what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw StoreError("bad number '" + text + "' in field " + std::string(what));
  }
  return value;
}

const std::string *single(const Fields &fields, const std::string &name) {
  auto it = fields.find(name);
  if (it == fields.end() || it->second.empty()) return nullptr;
  return &it->second.front();
}

// ---- files ----

void write_file(const fs::path &path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StoreError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw StoreError("cannot write " + path.string());
}

struct ManifestEntry {
  std::uint64_t size = 0;
  std::uint32_t crc = 0;
};

std::string format_manifest(const std::map<std::string, std::string> &files) {
  std::string out(kManifestHeader);
  out += '\n';
  for (const auto &[name, bytes] : files) {
    char crc[16];
    std::snprintf(crc, sizeof crc, "%08x", crc_of(bytes));
    out += name + " " + std::to_string(bytes.size()) + " " + crc + "\n";
  }
  return out;
}

std::map<std::string, ManifestEntry> parse_manifest(const std::string &text,
                                                    const fs::path &dir) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kManifestHeader) {
    throw StoreError("unrecognized MANIFEST in " + dir.string());
  }
  std::map<std::string, ManifestEntry> entries;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string name;
    std::string crc;
    ManifestEntry e;
    if (!(fields >> name >> e.size >> crc) || crc.size() != 8 ||
        name.find('/') != std::string::npos || name.find("..") != std::string::npos) {
      throw StoreError("bad MANIFEST line '" + line + "' in " + dir.string());
    }
    e.crc = static_cast<std::uint32_t>(std::stoul(crc, nullptr, 16));
    entries.emplace(name, e);
  }
  return entries;
}

bool is_yes_no(std::string_view v) { return v == "yes" || v == "no"; }

}  // namespace

// ---- descriptor ----

const std::map<std::string, std::vector<std::string>, std::less<>> &
PersistenceDescriptor::schema() {
  static const std::map<std::string, std::vector<std::string>, std::less<>> schema = {
      {"Topic", {"id", "base_name", "variants", "instance_of", "shortdesc", "body"}},
      {"DateFact", {"topic", "role", "location", "day", "month", "year"}},
      {"Occurrence", {"topic", "role_spec", "resource_data"}},
      {"Association", {"source", "target", "role", "direction"}},
      {"UnresolvedRef", {"source", "term"}},
  };
  return schema;
}

PersistenceDescriptor PersistenceDescriptor::parse(std::string_view text) {
  PersistenceDescriptor d;
  std::vector<std::string> problems;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    std::istringstream words(line);
    std::vector<std::string> w;
    for (std::string s; words >> s;) w.push_back(s);
    const std::string where = "line " + std::to_string(line_no);

    if (w[0] == "type") {
      if (w.size() != 2) throw StoreError(where + ": expected 'type <Name>'");
      for (const TypeSpec &t : d.types_) {
        if (t.name == w[1]) throw StoreError(where + ": duplicate type " + w[1]);
      }
      d.types_.push_back({w[1], {}});
    } else if (w[0] == "field") {
      if (d.types_.empty()) throw StoreError(where + ": field outside a type stanza");
      if (w.size() < 2 || w.size() % 2 != 0) {
        throw StoreError(where + ": expected 'field <name> [persist yes|no] [key yes|no]'");
      }
      FieldSpec f;
      f.name = w[1];
      for (std::size_t i = 2; i < w.size(); i += 2) {
        if (!is_yes_no(w[i + 1]) || (w[i] != "persist" && w[i] != "key")) {
          throw StoreError(where + ": bad option '" + w[i] + " " + w[i + 1] + "'");
        }
        (w[i] == "persist" ? f.persist : f.key) = w[i + 1] == "yes";
      }
      TypeSpec &t = d.types_.back();
      for (const FieldSpec &g : t.fields) {
        if (g.name == f.name) throw StoreError(where + ": duplicate field " + f.name);
      }
      t.fields.push_back(std::move(f));
    } else {
      throw StoreError(where + ": unknown directive '" + w[0] + "'");
    }
  }

  std::vector<std::string> unknown;
  for (const TypeSpec &t : d.types_) {
    auto known = schema().find(t.name);
    if (known == schema().end()) {
      unknown.push_back(t.name);
      continue;
    }
    for (const FieldSpec &f : t.fields) {
      if (std::find(known->second.begin(), known->second.end(), f.name) == known->second.end()) {
        unknown.push_back(t.name + "." + f.name);
      }
    }
  }
  if (!unknown.empty()) {
    std::string message = "descriptor names unknown types or fields:";
    for (const std::string &u : unknown) message += " " + u;
    throw StoreError(message);
  }
  for (const auto &required : mandatory_types()) {
    if (!d.has_type(required)) problems.push_back("missing type " + required);
  }
  for (const TypeSpec &t : d.types_) {
    const std::string &key_name = schema().find(t.name)->second.front();
    std::size_t keys = 0;
    for (const FieldSpec &f : t.fields) {
      if (!f.key) continue;
      ++keys;
      if (f.name != key_name) {
        problems.push_back("key of " + t.name + " must be " + key_name);
      } else if (!f.persist) {
        problems.push_back("key " + t.name + "." + f.name + " must be persisted");
      }
    }
    if (keys != 1) problems.push_back(t.name + " needs exactly one key field");
  }
  if (!problems.empty()) {
    std::string message = "invalid descriptor:";
    for (const std::string &p : problems) message += " " + p + ";";
    message.pop_back();
    throw StoreError(message);
  }
  return d;
}

const PersistenceDescriptor &PersistenceDescriptor::defaults() {
  static const PersistenceDescriptor d = parse(embedded::k_default_descriptor);
  return d;
}

PersistenceDescriptor PersistenceDescriptor::full() {
  PersistenceDescriptor d;
  for (const std::string_view name :
       {"Topic", "DateFact", "Occurrence", "Association", "UnresolvedRef"}) {
    TypeSpec t{std::string(name), {}};
    const auto &fields = schema().find(name)->second;
    for (std::size_t i = 0; i < fields.size(); ++i) t.fields.push_back({fields[i], true, i == 0});
    d.types_.push_back(std::move(t));
  }
  return d;
}

bool PersistenceDescriptor::has_type(std::string_view type) const {
  return std::any_of(types_.begin(), types_.end(),
                     [&](const TypeSpec &t) { return t.name == type; });
}

bool PersistenceDescriptor::persists(std::string_view type, std::string_view field) const {
  for (const TypeSpec &t : types_) {
    if (t.name != type) continue;
    for (const FieldSpec &f : t.fields) {
      if (f.name == field) return f.persist;
    }
  }
  return false;
}

std::string PersistenceDescriptor::to_text() const {
  std::string out;
  for (const TypeSpec &t : types_) {
    if (!out.empty()) out += '\n';
    out += "type " + t.name + "\n";
    for (const FieldSpec &f : t.fields) {
      out += "field " + f.name;
      if (!f.persist) out += " persist no";
      if (f.key) out += " key yes";
      out += '\n';
    }
  }
  return out;
}

PersistenceDescriptor PersistenceDescriptor::without(std::string_view type,
                                                     std::string_view field) const {
  PersistenceDescriptor d = *this;
  for (TypeSpec &t : d.types_) {
    if (t.name != type) continue;
    for (FieldSpec &f : t.fields) {
      if (f.name != field) continue;
      if (f.key) throw StoreError("cannot drop key field " + t.name + "." + f.name);
      f.persist = false;
      return d;
    }
  }
  throw StoreError("descriptor has no field " + std::string(type) + "." + std::string(field));
}

// ---- writer ----

StoreWriter::StoreWriter(fs::path dir, PersistenceDescriptor descriptor)
    : dir_(std::move(dir)), descriptor_(std::move(descriptor)) {}

void StoreWriter::put_map(const TopicMap &map) {
  const PersistenceDescriptor &d = descriptor_;
  std::map<std::string, std::vector<PendingRecord>> tables;
  for (const auto &[type, stem] : table_files()) {
    if (d.has_type(type)) tables[type];
  }
  auto add = [&](const std::string &type, TopicId key, Fields fields) {
    auto it = tables.find(type);
    if (it == tables.end()) return;
    std::erase_if(fields, [&](const auto &kv) { return !d.persists(type, kv.first); });
    it->second.push_back({key, encode_payload(key, fields)});
  };

  for (const auto &[id, t] : map.topics) {
    add("Topic", id,
        {{"base_name", {t.base_name}},
         {"variants", t.variants},
         {"instance_of", {std::to_string(t.instance_of)}},
         {"shortdesc", {t.shortdesc}},
         {"body", {t.body}}});
    for (const DateFact &f : t.date_facts) {
      Fields fields = {{"role", {f.role}}, {"year", {std::to_string(f.year)}}};
      if (f.location) fields["location"] = {*f.location};
      if (f.day) fields["day"] = {std::to_string(*f.day)};
      if (f.month) fields["month"] = {std::to_string(*f.month)};
      add("DateFact", id, std::move(fields));
    }
    for (const Occurrence &o : t.occurrences) {
      add("Occurrence", id, {{"role_spec", {o.role_spec}}, {"resource_data", {o.resource_data}}});
    }
  }

  std::vector<const Association *> associations;
  for (const Association &a : map.associations) associations.push_back(&a);
  std::stable_sort(associations.begin(), associations.end(),
                   [](const Association *a, const Association *b) { return a->source < b->source; });
  for (const Association *a : associations) {
    const auto target = a->target_id();
    if (!target) throw StoreError("cannot persist an association to an unresolved name");
    add("Association", a->source,
        {{"target", {std::to_string(*target)}},
         {"role", {a->role}},
         {"direction", {std::string(to_string(a->direction))}}});
  }

  std::vector<UnresolvedRef> unresolved = map.unresolved_refs;
  std::stable_sort(unresolved.begin(), unresolved.end(),
                   [](const UnresolvedRef &a, const UnresolvedRef &b) { return a.source < b.source; });
  for (const UnresolvedRef &r : unresolved) add("UnresolvedRef", r.source, {{"term", {r.term}}});

  for (auto &[type, records] : tables) {
    const std::string &stem = table_files().find(type)->second;
    auto [data, index] = encode_table(records);
    files_[stem + ".dat"] = std::move(data);
    files_[stem + ".idx"] = std::move(index);
  }
}

void StoreWriter::put_blob(const std::string &name, std::string bytes) {
  if (name.empty() || name.find('/') != std::string::npos || name == kManifestName ||
      name == kDescriptorName || name.front() == '.') {
    throw StoreError("invalid blob name '" + name + "'");
  }
  files_[name] = std::move(bytes);
}

void StoreWriter::commit() {
  files_[std::string(kDescriptorName)] = descriptor_.to_text();
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw StoreError("cannot create " + dir_.string() + ": " + ec.message());

  std::set<std::string> previous;
  if (fs::exists(dir_ / kManifestName)) {
    try {
      for (const auto &[name, entry] : parse_manifest(read_file(dir_ / kManifestName), dir_)) {
        previous.insert(name);
      }
    } catch (const std::exception &) {
      // An unreadable old manifest only means nothing is cleaned up.
    }
  }

  const fs::path staging = dir_ / ".staging";
  fs::remove_all(staging, ec);
  fs::create_directories(staging, ec);
  if (ec) throw StoreError("cannot create " + staging.string() + ": " + ec.message());
  for (const auto &[name, bytes] : files_) write_file(staging / name, bytes);
  write_file(staging / kManifestName, format_manifest(files_));

  for (const auto &[name, bytes] : files_) {
    fs::rename(staging / name, dir_ / name, ec);
    if (ec) throw StoreError("cannot publish " + name + ": " + ec.message());
    previous.erase(name);
  }
  fs::rename(staging / kManifestName, dir_ / kManifestName, ec);
  if (ec) throw StoreError("cannot publish MANIFEST: " + ec.message());
  fs::remove_all(staging, ec);
  for (const std::string &stale : previous) fs::remove(dir_ / stale, ec);
}

Store persist(const TopicMap &map, const PersistenceDescriptor &descriptor,
              const fs::path &dir) {
  StoreWriter writer(dir, descriptor);
  writer.put_map(map);
  writer.commit();
  return Store::open(dir);
}

// ---- reader ----

Store Store::open(const fs::path &dir) {
  const fs::path manifest_path = dir / kManifestName;
  if (!fs::exists(manifest_path)) throw StoreError("no store at " + dir.string());

  // A commit in progress can pair an old MANIFEST with new files; retry
  // until both agree.
  std::map<std::string, std::string> files;
  bool consistent = false;
  bool size_mismatch = false;
  for (int attempt = 0; attempt < 5 && !consistent; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(20 * attempt));
    const std::string manifest = read_file(manifest_path);
    files.clear();
    consistent = true;
    size_mismatch = false;
    for (const auto &[name, entry] : parse_manifest(manifest, dir)) {
      std::string bytes;
      try {
        bytes = read_file(dir / name);
      } catch (const std::exception &) {
        throw StoreError("store file " + name + " missing in " + dir.string());
      }
      if (bytes.size() != entry.size) size_mismatch = true;
      if (bytes.size() != entry.size || crc_of(bytes) != entry.crc) consistent = false;
      files.emplace(name, std::move(bytes));
    }
    if (read_file(manifest_path) != manifest) consistent = false;
  }
  // A persistent checksum mismatch with correct sizes is corruption inside
  // records; it is reported per record when that record is read.
  if (size_mismatch) throw StoreError("store files do not match MANIFEST in " + dir.string());

  Store store;
  auto descriptor = files.find(std::string(kDescriptorName));
  if (descriptor == files.end()) throw StoreError("store descriptor missing in " + dir.string());
  store.descriptor_ = PersistenceDescriptor::parse(descriptor->second);

  for (const auto &[type, stem] : table_files()) {
    if (!store.descriptor_.has_type(type)) continue;
    auto data = files.find(stem + ".dat");
    auto index = files.find(stem + ".idx");
    if (data == files.end() || index == files.end()) {
      throw StoreError("store table " + stem + " missing in " + dir.string());
    }
    Table table;
    table.type = type;
    table.data = std::move(data->second);
    if (table.data.compare(0, kRecordMagic.size(), kRecordMagic) != 0) {
      throw StoreError(stem + ".dat is not a record file");
    }
    Reader idx(index->second, stem + ".idx");
    if (idx.bytes(kIndexMagic.size()) != kIndexMagic) throw StoreError(stem + ".idx is not an index file");
    const std::uint32_t n = idx.u32();
    for (std::uint32_t i = 0; i < n; ++i) {
      const TopicId key = idx.u64();
      Slot slot;
      slot.offset = idx.u64();
      slot.count = idx.u32();
      if (slot.offset > table.data.size()) throw StoreError(stem + ".idx points past its data");
      table.slots.emplace(key, slot);
    }
    files.erase(data);
    files.erase(index);
    store.tables_.emplace(type, std::move(table));
  }
  for (auto &[name, bytes] : files) {
    if (name != kDescriptorName) store.blobs_.emplace(name, std::move(bytes));
  }
  return store;
}

std::vector<Store::Record> Store::read_records(const Table &table, TopicId key) const {
  std::vector<Record> out;
  auto it = table.slots.find(key);
  if (it == table.slots.end()) return out;
  Reader r(table.data, table.type + " records");
  r.seek(it->second.offset);
  for (std::uint32_t i = 0; i < it->second.count; ++i) {
    const std::uint32_t length = r.u32();
    const std::uint32_t crc = r.u32();
    const std::string_view payload = r.bytes(length);
    if (crc_of(payload) != crc) {
      throw IntegrityError(table.type, key,
                           "corrupted " + table.type + " record for id " + std::to_string(key));
    }
    Reader p(payload, table.type + " record " + std::to_string(key));
    Record record;
    record.key = p.u64();
    if (record.key != key) {
      throw IntegrityError(table.type, key,
                           "misplaced " + table.type + " record for id " + std::to_string(key));
    }
    const std::uint32_t fields = p.u32();
    for (std::uint32_t f = 0; f < fields; ++f) {
      std::string name = p.str();
      std::vector<std::string> values(p.u32());
      for (std::string &v : values) v = p.str();
      record.fields.emplace(std::move(name), std::move(values));
    }
    out.push_back(std::move(record));
  }
  return out;
}

std::vector<Store::Record> Store::read_all(const Table &table) const {
  std::vector<Record> out;
  for (const auto &[key, slot] : table.slots) {
    auto records = read_records(table, key);
    out.insert(out.end(), std::make_move_iterator(records.begin()),
               std::make_move_iterator(records.end()));
  }
  return out;
}

std::optional<Topic> Store::get_topic(TopicId id) const {
  const Table &topics = tables_.at("Topic");
  const std::vector<Record> records = read_records(topics, id);
  if (records.empty()) return std::nullopt;
  const Fields &f = records.front().fields;

  Topic t;
  t.id = id;
  if (const std::string *v = single(f, "base_name")) t.base_name = *v;
  if (auto it = f.find("variants"); it != f.end()) t.variants = it->second;
  if (const std::string *v = single(f, "instance_of")) {
    t.instance_of = parse_number<TopicId>(*v, "Topic.instance_of");
  }
  if (const std::string *v = single(f, "shortdesc")) t.shortdesc = *v;
  if (const std::string *v = single(f, "body")) t.body = *v;

  for (const Record &r : read_records(tables_.at("DateFact"), id)) {
    DateFact d;
    if (const std::string *v = single(r.fields, "role")) d.role = *v;
    if (const std::string *v = single(r.fields, "location")) d.location = *v;
    if (const std::string *v = single(r.fields, "day")) d.day = parse_number<int>(*v, "DateFact.day");
    if (const std::string *v = single(r.fields, "month")) {
      d.month = parse_number<int>(*v, "DateFact.month");
    }
    if (const std::string *v = single(r.fields, "year")) d.year = parse_number<int>(*v, "DateFact.year");
    t.date_facts.push_back(std::move(d));
  }
  for (const Record &r : read_records(tables_.at("Occurrence"), id)) {
    Occurrence o;
    if (const std::string *v = single(r.fields, "role_spec")) o.role_spec = *v;
    if (const std::string *v = single(r.fields, "resource_data")) o.resource_data = *v;
    t.occurrences.push_back(std::move(o));
  }
  return t;
}

std::vector<TopicId> Store::topic_ids() const {
  std::vector<TopicId> ids;
  for (const auto &[id, slot] : tables_.at("Topic").slots) ids.push_back(id);
  return ids;
}

TopicMap Store::load_map() const {
  TopicMap map;
  for (TopicId id : topic_ids()) map.topics.emplace(id, *get_topic(id));
  for (const Record &r : read_all(tables_.at("Association"))) {
    Association a;
    a.source = r.key;
    a.target = TopicId{0};
    if (const std::string *v = single(r.fields, "target")) {
      a.target = parse_number<TopicId>(*v, "Association.target");
    }
    if (const std::string *v = single(r.fields, "role")) a.role = *v;
    if (const std::string *v = single(r.fields, "direction")) {
      const auto d = parse_direction(*v);
      if (!d) throw StoreError("bad direction '" + *v + "' in Association record");
      a.direction = *d;
    }
    map.associations.push_back(std::move(a));
  }
  if (auto it = tables_.find("UnresolvedRef"); it != tables_.end()) {
    for (const Record &r : read_all(it->second)) {
      UnresolvedRef u;
      u.source = r.key;
      if (const std::string *v = single(r.fields, "term")) u.term = *v;
      map.unresolved_refs.push_back(std::move(u));
    }
  }
  return map;
}

bool Store::has_blob(const std::string &name) const { return blobs_.count(name) != 0; }

const std::string &Store::read_blob(const std::string &name) const {
  auto it = blobs_.find(name);
  if (it == blobs_.end()) throw StoreError("store has no file '" + name + "'");
  return it->second;
}

}  // namespace conditor
