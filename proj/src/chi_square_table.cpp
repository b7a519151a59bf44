// Copyright 2026 The dualemo Authors.
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

#include "chi_square_table.hpp"

namespace dualemo::detail {

// Upper-tail chi-square quantiles, {95%, 99%}, for 1..100 degrees of freedom.
const std::array<std::array<double, 2>, kChiSquareTableMaxDof> kChiSquareCritical = {{
    {3.841459, 6.634897},  // 1
    {5.991465, 9.210340},  // 2
    {7.814728, 11.344867},  // 3
    {9.487729, 13.276704},  // 4
    {11.070498, 15.086272},  // 5
    {12.591587, 16.811894},  // 6
    {14.067140, 18.475307},  // 7
    {15.507313, 20.090235},  // 8
    {16.918978, 21.665994},  // 9
    {18.307038, 23.209251},  // 10
    {19.675138, 24.724970},  // 11
    {21.026070, 26.216967},  // 12
    {22.362032, 27.688250},  // 13
    {23.684791, 29.141238},  // 14
    {24.995790, 30.577914},  // 15
    {26.296228, 31.999927},  // 16
    {27.587112, 33.408664},  // 17
    {28.869299, 34.805306},  // 18
    {30.143527, 36.190869},  // 19
    {31.410433, 37.566235},  // 20
    {32.670573, 38.932173},  // 21
    {33.924438, 40.289360},  // 22
    {35.172462, 41.638398},  // 23
    {36.415029, 42.979820},  // 24
    {37.652484, 44.314105},  // 25
    {38.885139, 45.641683},  // 26
    {40.113272, 46.962942},  // 27
    {41.337138, 48.278236},  // 28
    {42.556968, 49.587884},  // 29
    {43.772972, 50.892181},  // 30
    {44.985343, 52.191395},  // 31
    {46.194260, 53.485772},  // 32
    {47.399884, 54.775540},  // 33
    {48.602367, 56.060909},  // 34
    {49.801850, 57.342073},  // 35
    {50.998460, 58.619215},  // 36
    {52.192320, 59.892500},  // 37
    {53.383541, 61.162087},  // 38
    {54.572228, 62.428121},  // 39
    {55.758479, 63.690740},  // 40
    {56.942387, 64.950071},  // 41
    {58.124038, 66.206236},  // 42
    {59.303512, 67.459348},  // 43
    {60.480887, 68.709513},  // 44
    {61.656233, 69.956832},  // 45
    {62.829620, 71.201400},  // 46
    {64.001112, 72.443307},  // 47
    {65.170769, 73.682639},  // 48
    {66.338649, 74.919474},  // 49
    {67.504807, 76.153891},  // 50
    {68.669294, 77.385962},  // 51
    {69.832160, 78.615756},  // 52
    {70.993453, 79.843338},  // 53
    {72.153216, 81.068772},  // 54
    {73.311493, 82.292117},  // 55
    {74.468324, 83.513430},  // 56
    {75.623748, 84.732766},  // 57
    {76.777803, 85.950176},  // 58
    {77.930524, 87.165711},  // 59
    {79.081944, 88.379419},  // 60
    {80.232098, 89.591344},  // 61
    {81.381015, 90.801532},  // 62
    {82.528727, 92.010024},  // 63
    {83.675261, 93.216860},  // 64
    {84.820645, 94.422079},  // 65
    {85.964907, 95.625719},  // 66
    {87.108072, 96.827816},  // 67
    {88.250164, 98.028403},  // 68
    {89.391208, 99.227515},  // 69
    {90.531225, 100.425184},  // 70
    {91.670239, 101.621441},  // 71
    {92.808270, 102.816314},  // 72
    {93.945340, 104.009834},  // 73
    {95.081467, 105.202028},  // 74
    {96.216671, 106.392923},  // 75
    {97.350970, 107.582545},  // 76
    {98.484383, 108.770919},  // 77
    {99.616927, 109.958069},  // 78
    {100.748619, 111.144019},  // 79
    {101.879474, 112.328793},  // 80
    {103.009509, 113.512410},  // 81
    {104.138738, 114.694895},  // 82
    {105.267177, 115.876266},  // 83
    {106.394840, 117.056544},  // 84
    {107.521741, 118.235749},  // 85
    {108.647893, 119.413900},  // 86
    {109.773309, 120.591015},  // 87
    {110.898003, 121.767111},  // 88
    {112.021986, 122.942207},  // 89
    {113.145270, 124.116319},  // 90
    {114.267868, 125.289463},  // 91
    {115.389790, 126.461656},  // 92
    {116.511047, 127.632913},  // 93
    {117.631651, 128.803249},  // 94
    {118.751612, 129.972679},  // 95
    {119.870939, 131.141217},  // 96
    {120.989644, 132.308877},  // 97
    {122.107735, 133.475672},  // 98
    {123.225221, 134.641617},  // 99
    {124.342113, 135.806723},  // 100
}};

}  // namespace dualemo::detail
