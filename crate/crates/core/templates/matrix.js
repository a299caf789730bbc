// Small vector and matrix library. Matrices are 16-element arrays in
// column-major order, the layout WebGL expects for uniformMatrix4fv.

function addVectors(left, right) {
  return [left[0] + right[0], left[1] + right[1], left[2] + right[2]];
}

function subtractVectors(left, right) {
  return [left[0] - right[0], left[1] - right[1], left[2] - right[2]];
}

function scaleVector(vector, factor) {
  return [vector[0] * factor, vector[1] * factor, vector[2] * factor];
}

function dotProduct(left, right) {
  return left[0] * right[0] + left[1] * right[1] + left[2] * right[2];
}

function crossProduct(left, right) {
  return [
    left[1] * right[2] - left[2] * right[1],
    left[2] * right[0] - left[0] * right[2],
    left[0] * right[1] - left[1] * right[0],
  ];
}

function vectorLength(vector) {
  return Math.sqrt(dotProduct(vector, vector));
}

function normalizeVector(vector) {
  const length = vectorLength(vector);
  if (length === 0) {
    return [0, 0, 0];
  }
  return scaleVector(vector, 1 / length);
}

function identityMatrix() {
  return [
    1, 0, 0, 0,
    0, 1, 0, 0,
    0, 0, 1, 0,
    0, 0, 0, 1,
  ];
}

function matrixElement(matrix, row, column) {
  return matrix[column * 4 + row];
}

function multiplyMatrices(left, right) {
  const product = new Array(16).fill(0);
  for (let column = 0; column < 4; column++) {
    for (let row = 0; row < 4; row++) {
      let sum = 0;
      for (let k = 0; k < 4; k++) {
        sum += matrixElement(left, row, k) * matrixElement(right, k, column);
      }
      product[column * 4 + row] = sum;
    }
  }
  return product;
}

// Transform a point (implicit w = 1) by an affine matrix.
function transformPoint(matrix, point) {
  const result = [0, 0, 0];
  for (let row = 0; row < 3; row++) {
    result[row] = matrixElement(matrix, row, 0) * point[0]
      + matrixElement(matrix, row, 1) * point[1]
      + matrixElement(matrix, row, 2) * point[2]
      + matrixElement(matrix, row, 3);
  }
  return result;
}

// Inverse-transpose of the upper-left 3x3 block, returned as rows.
// Carries normals from model space to world space; null when singular.
function normalMatrixRows(model) {
  const element = function (row, column) {
    return matrixElement(model, row, column);
  };
  const cofactors = [
    [
      element(1, 1) * element(2, 2) - element(1, 2) * element(2, 1),
      element(1, 2) * element(2, 0) - element(1, 0) * element(2, 2),
      element(1, 0) * element(2, 1) - element(1, 1) * element(2, 0),
    ],
    [
      element(0, 2) * element(2, 1) - element(0, 1) * element(2, 2),
      element(0, 0) * element(2, 2) - element(0, 2) * element(2, 0),
      element(0, 1) * element(2, 0) - element(0, 0) * element(2, 1),
    ],
    [
      element(0, 1) * element(1, 2) - element(0, 2) * element(1, 1),
      element(0, 2) * element(1, 0) - element(0, 0) * element(1, 2),
      element(0, 0) * element(1, 1) - element(0, 1) * element(1, 0),
    ],
  ];
  const determinant = element(0, 0) * cofactors[0][0]
    + element(0, 1) * cofactors[0][1]
    + element(0, 2) * cofactors[0][2];
  if (determinant === 0 || !isFinite(determinant)) {
    return null;
  }
  // The cofactor matrix divided by the determinant is the inverse transposed.
  return cofactors.map(function (cofactorRow) {
    return scaleVector(cofactorRow, 1 / determinant);
  });
}

function transformNormal(rows, normal) {
  if (rows === null) {
    return normalizeVector(normal);
  }
  return normalizeVector([dotProduct(rows[0], normal), dotProduct(rows[1], normal), dotProduct(rows[2], normal)]);
}

// Right-handed view matrix; the camera looks down -z in view space.
function lookAtMatrix(eye, target, up) {
  const forward = normalizeVector(subtractVectors(target, eye));
  const side = normalizeVector(crossProduct(forward, up));
  const trueUp = crossProduct(side, forward);
  return [
    side[0], trueUp[0], -forward[0], 0,
    side[1], trueUp[1], -forward[1], 0,
    side[2], trueUp[2], -forward[2], 0,
    -dotProduct(side, eye), -dotProduct(trueUp, eye), dotProduct(forward, eye), 1,
  ];
}

// Maps view-space depth -near..-far to the clip range -1..1.
function perspectiveMatrix(fieldOfViewDegrees, aspectRatio, near, far) {
  const focalLength = 1 / Math.tan((fieldOfViewDegrees * Math.PI) / 360);
  return [
    focalLength / aspectRatio, 0, 0, 0,
    0, focalLength, 0, 0,
    0, 0, (far + near) / (near - far), -1,
    0, 0, (2 * far * near) / (near - far), 0,
  ];
}
