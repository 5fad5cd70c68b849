#ifndef MULTDEP_VERSION_HPP
#define MULTDEP_VERSION_HPP

namespace multdep {

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr int kManifestSchemaVersion = 1;

}  // namespace multdep

#endif
