#include "table1_data.hpp"

#include <initializer_list>

namespace bwkit::table1 {

namespace {

Matrix rows5(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(5, 5);
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

Matrix set_witness_trace2() {
  return rows5({{0.3209, -0.1364, -0.1069, -0.1686, 0.0726},
                {-0.1364, 0.5256, 0.1634, -0.0637, -0.1171},
                {-0.1069, 0.1634, 0.5295, 0.0262, -0.095},
                {-0.1686, -0.0637, 0.0262, 0.2931, 0.0048},
                {0.0726, -0.1171, -0.095, 0.0048, 0.3308}});
}

Matrix set_witness_trace1() {
  return rows5({{0.1605, -0.0682, -0.0535, -0.0843, 0.0363},
                {-0.0682, 0.2628, 0.0817, -0.0319, -0.0585},
                {-0.0535, 0.0817, 0.2647, 0.0131, -0.0475},
                {-0.0843, -0.0319, 0.0131, 0.1466, 0.0024},
                {0.0363, -0.0585, -0.0475, 0.0024, 0.1654}});
}

std::vector<double> barycenter_weights() { return {0.8766, 0.6682, 1.0852, 1.1009, 0.524}; }

std::vector<Matrix> barycenter_matrices() {
  return {
      rows5({{2.7273, -1.3426, -1.4873, 1.1069, -0.5844},
             {-1.3426, 5.6047, -0.7192, 0.3519, 1.0648},
             {-1.4873, -0.7192, 4.6821, -0.9547, -1.6117},
             {1.1069, 0.3519, -0.9547, 2.4089, -0.9744},
             {-0.5844, 1.0648, -1.6117, -0.9744, 3.5771}}),
      rows5({{5.6143, -0.1039, 1.4161, 0.0105, 0.9256},
             {-0.1039, 4.6277, 0.5304, 0.0571, 0.6138},
             {1.4161, 0.5304, 7.017, -0.4625, -0.3483},
             {0.0105, 0.0571, -0.4625, 5.4935, 1.2015},
             {0.9256, 0.6138, -0.3483, 1.2015, 8.2474}}),
      rows5({{5.4601, -0.1268, -0.7682, -0.729, -0.909},
             {-0.1268, 7.7425, 0.1735, 0.4499, -0.511},
             {-0.7682, 0.1735, 6.8627, -0.3396, -1.259},
             {-0.729, 0.4499, -0.3396, 6.7328, 1.1921},
             {-0.909, -0.511, -1.259, 1.1921, 4.2019}}),
      rows5({{2.937, -1.1282, 0.3996, 0.9282, -0.3372},
             {-1.1282, 3.3586, -0.4808, -1.112, 0.3812},
             {0.3996, -0.4808, 2.1708, 0.4026, -0.1732},
             {0.9282, -1.112, 0.4026, 3.043, -0.8748},
             {-0.3372, 0.3812, -0.1732, -0.8748, 4.4907}}),
      rows5({{4.5401, 1.2074, 1.3077, 1.6847, -1.2072},
             {1.2074, 3.9336, 2.5037, 1.5876, -0.3888},
             {1.3077, 2.5037, 3.8015, 0.5648, 0.9108},
             {1.6847, 1.5876, 0.5648, 4.1194, -1.8946},
             {-1.2072, -0.3888, 0.9108, -1.8946, 4.6055}}),
  };
}

Matrix barycenter_sdp_solution() {
  return rows5({{3.8514, -0.5993, -0.0722, 0.5644, -0.4899},
                {-0.5993, 4.8924, 0.1755, 0.0716, 0.2198},
                {-0.0722, 0.1755, 4.4109, -0.1818, -0.6419},
                {0.5644, 0.0716, -0.1818, 3.9922, -0.3331},
                {-0.4899, 0.2198, -0.6419, -0.3331, 4.5659}});
}

Matrix barycenter_fixed_point_solution() {
  return rows5({{3.8514, -0.5994, -0.0722, 0.5644, -0.4899},
                {-0.5994, 4.8924, 0.1756, 0.0716, 0.2198},
                {-0.0722, 0.1756, 4.4108, -0.1818, -0.6419},
                {0.5644, 0.0716, -0.1818, 3.9921, -0.3331},
                {-0.4899, 0.2198, -0.6419, -0.3331, 4.5658}});
}

Matrix ball_center() {
  return rows5({{6.5722, -0.4557, 0.018, 0.0854, 0.1883},
                {-0.4557, 6.3399, -0.0739, -0.1726, -0.2416},
                {0.018, -0.0739, 5.8477, -0.2659, -0.2295},
                {0.0854, -0.1726, -0.2659, 5.5408, -0.3855},
                {0.1883, -0.2416, -0.2295, -0.3855, 5.6995}});
}

Matrix ball_solution() {
  return rows5({{1.1203, -0.036, 0.0016, 0.0071, 0.0152},
                {-0.036, 1.1016, -0.0065, -0.0149, -0.0201},
                {0.0016, -0.0065, 1.0617, -0.0234, -0.0202},
                {0.0071, -0.0149, -0.0234, 1.0346, -0.0341},
                {0.0152, -0.0201, -0.0202, -0.0341, 1.0482}});
}

}  // namespace bwkit::table1
