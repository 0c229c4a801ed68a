#pragma once
// JSON serialization of samples (schema version 1) and the voxel sidecar
// header. Numeric payload round-trips losslessly: doubles are emitted with
// shortest-round-trip formatting.

#include <string>

#include "rvegen/sample.hpp"

namespace rvegen {

std::string sample_to_json(const RveSample& sample);
RveSample sample_from_json(const std::string& text);

void save_sample(const RveSample& sample, const std::string& path);
RveSample load_sample(const std::string& path);

struct VoxelGrid;
void write_voxel_sidecar(const VoxelGrid& grid, const RveSample& sample,
                         const std::string& path);

} // namespace rvegen
