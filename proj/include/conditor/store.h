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

// Embedded on-disk store for topic maps. A persistence descriptor selects
// which fields of each type are written; everything else loads as its
// default value. Layout: docs/format-store.md.

#ifndef CONDITOR_STORE_H_
#define CONDITOR_STORE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "conditor/topicmap.h"

namespace conditor {

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A record whose checksum does not match its payload.
class IntegrityError : public StoreError {
 public:
  IntegrityError(std::string type, TopicId id, const std::string &message)
      : StoreError(message), type_(std::move(type)), id_(id) {}

  const std::string &type() const { return type_; }
  TopicId id() const { return id_; }

 private:
  std::string type_;
  TopicId id_;
};

struct FieldSpec {
  std::string name;
  bool persist = true;
  bool key = false;

  bool operator==(const FieldSpec &) const = default;
};

struct TypeSpec {
  std::string name;
  std::vector<FieldSpec> fields;

  bool operator==(const TypeSpec &) const = default;
};

class PersistenceDescriptor {
 public:
  // Throws StoreError listing every unknown type or field, missing
  // mandatory types, and key problems.
  static PersistenceDescriptor parse(std::string_view text);
  static const PersistenceDescriptor &defaults();

  // Every known field of every known type persisted.
  static PersistenceDescriptor full();

  // Fields of `type` that are stored; the key field is always among them.
  bool persists(std::string_view type, std::string_view field) const;
  bool has_type(std::string_view type) const;
  const std::vector<TypeSpec> &types() const { return types_; }

  // Canonical text form; parse(to_text()) == *this.
  std::string to_text() const;

  // Copy with one field switched off. Throws StoreError for a key field or
  // a field the descriptor does not list.
  PersistenceDescriptor without(std::string_view type, std::string_view field) const;

  bool operator==(const PersistenceDescriptor &) const = default;

  // Known types and their fields; the first field is the key.
  static const std::map<std::string, std::vector<std::string>, std::less<>> &schema();

 private:
  std::vector<TypeSpec> types_;
};

// Writes a complete store directory. Nothing is visible to readers until
// commit(), which publishes all files and then the MANIFEST.
class StoreWriter {
 public:
  StoreWriter(std::filesystem::path dir, PersistenceDescriptor descriptor);

  void put_map(const TopicMap &map);
  // An opaque named file stored alongside the records (e.g. the index).
  void put_blob(const std::string &name, std::string bytes);
  void commit();

 private:
  std::filesystem::path dir_;
  PersistenceDescriptor descriptor_;
  std::map<std::string, std::string> files_;
};

// Read-only snapshot of a committed store. Safe for concurrent readers.
class Store {
 public:
  // Throws StoreError when the directory is missing or inconsistent.
  static Store open(const std::filesystem::path &dir);

  // The persisted projection of the topic, or nullopt when absent.
  // Throws IntegrityError on a corrupted record.
  std::optional<Topic> get_topic(TopicId id) const;
  std::vector<TopicId> topic_ids() const;
  TopicMap load_map() const;

  bool has_blob(const std::string &name) const;
  const std::string &read_blob(const std::string &name) const;

  const PersistenceDescriptor &descriptor() const { return descriptor_; }

 private:
  struct Slot {
    std::uint64_t offset = 0;
    std::uint32_t count = 0;
  };
  struct Table {
    std::string type;
    std::string data;
    std::map<TopicId, Slot> slots;
  };

  struct Record {
    TopicId key = 0;
    std::map<std::string, std::vector<std::string>> fields;
  };
  std::vector<Record> read_records(const Table &table, TopicId key) const;
  std::vector<Record> read_all(const Table &table) const;

  PersistenceDescriptor descriptor_;
  std::map<std::string, Table> tables_;
  std::map<std::string, std::string> blobs_;
};

// persist = StoreWriter + put_map + commit + open.
Store persist(const TopicMap &map, const PersistenceDescriptor &descriptor,
              const std::filesystem::path &dir);

}  // namespace conditor

#endif  // CONDITOR_STORE_H_
