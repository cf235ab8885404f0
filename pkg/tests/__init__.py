# Distributed under the MIT License.
# See LICENSE for details.
