#pragma once

#include <stdexcept>
#include <string>

namespace causalnli {

/// The independence oracle contradicted itself (e.g. two v-structures force
/// opposite orientations of one edge), so it is not faithful to any DAG.
class FaithfulnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A mixed graph that should describe an equivalence class admits no
/// consistent DAG extension.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A serialized record violates the corpus schema. `field` names the first
/// offending field.
class SchemaError : public std::runtime_error {
public:
    SchemaError(const std::string& field, const std::string& message)
        : std::runtime_error("field '" + field + "': " + message), field_(field) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

}  // namespace causalnli
