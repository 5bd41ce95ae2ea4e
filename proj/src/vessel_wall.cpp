#include "lymphax/vessel_wall.hpp"

namespace lymphax {

template class TubeLaw<double>;
template class VesselWall<double>;

}  // namespace lymphax
