// GLSL sources for the three shading models. Every program shares the same
// lighting function, so switching the model only changes where it runs:
//   flat         once per triangle, at its centroid with the face normal
//   gouraud      once per vertex, colors interpolated across the triangle
//   blinn-phong  once per pixel, with the interpolated normal
// Lines and points always use per-vertex colors.

const LIGHT_KIND_CODES = { point: 0, directional: 1, spot: 2 };

function lightingFunctionSource(lightCount) {
  return `
precision highp float;

#define LIGHT_COUNT ${lightCount}

uniform int lightKinds[LIGHT_COUNT];
uniform vec3 lightPositions[LIGHT_COUNT];
uniform vec3 lightDirections[LIGHT_COUNT];
uniform float lightCutoffCosines[LIGHT_COUNT];
uniform float lightExponents[LIGHT_COUNT];
uniform vec3 lightAmbients[LIGHT_COUNT];
uniform vec3 lightDiffuses[LIGHT_COUNT];
uniform vec3 lightSpeculars[LIGHT_COUNT];

uniform vec3 materialAmbient;
uniform vec3 materialDiffuse;
uniform vec3 materialSpecular;
uniform float materialShininess;
uniform vec3 eyePosition;

// pow() is undefined for a zero base, so handle the edges explicitly.
float safePower(float base, float exponent) {
  if (exponent == 0.0) {
    return 1.0;
  }
  if (base <= 0.0) {
    return 0.0;
  }
  return pow(base, exponent);
}

vec3 illuminate(vec3 surfacePosition, vec3 surfaceNormal, bool useBlinnHighlight) {
  vec3 toEye = normalize(eyePosition - surfacePosition);
  vec3 color = vec3(0.0);
  for (int i = 0; i < LIGHT_COUNT; i++) {
    color += lightAmbients[i] * materialAmbient;

    vec3 toLight;
    if (lightKinds[i] == 1) {
      toLight = -lightDirections[i];
    } else {
      toLight = normalize(lightPositions[i] - surfacePosition);
    }

    float spotFactor = 1.0;
    if (lightKinds[i] == 2) {
      float cosAngle = dot(-toLight, lightDirections[i]);
      spotFactor = cosAngle >= lightCutoffCosines[i] ? safePower(max(cosAngle, 0.0), lightExponents[i]) : 0.0;
    }
    if (spotFactor == 0.0) {
      continue;
    }

    float facing = dot(surfaceNormal, toLight);
    float lambert = max(facing, 0.0);
    float highlight = 0.0;
    if (facing > 0.0) {
      float closeness;
      if (useBlinnHighlight) {
        closeness = dot(surfaceNormal, normalize(toLight + toEye));
      } else {
        closeness = dot(reflect(-toLight, surfaceNormal), toEye);
      }
      highlight = safePower(max(closeness, 0.0), materialShininess);
    }
    vec3 diffuseTerm = lightDiffuses[i] * materialDiffuse * lambert;
    vec3 specularTerm = lightSpeculars[i] * materialSpecular * highlight;
    color += (diffuseTerm + specularTerm) * spotFactor;
  }
  return clamp(color, 0.0, 1.0);
}
`;
}

// Lit once per vertex; also used for lines and points.
function vertexColorProgramSources(lightCount) {
  const vertexSource = lightingFunctionSource(lightCount) + `
uniform mat4 viewProjection;
uniform bool useBlinnHighlight;
attribute vec3 worldPosition;
attribute vec3 worldNormal;
varying vec3 vertexColor;

void main() {
  vertexColor = illuminate(worldPosition, normalize(worldNormal), useBlinnHighlight);
  gl_Position = viewProjection * vec4(worldPosition, 1.0);
  gl_PointSize = 1.0;
}
`;
  const fragmentSource = `
precision highp float;
varying vec3 vertexColor;

void main() {
  gl_FragColor = vec4(vertexColor, 1.0);
}
`;
  return { vertexSource: vertexSource, fragmentSource: fragmentSource };
}

// Every vertex of a triangle carries the triangle's centroid and face
// normal, so all three compute the same color.
function flatProgramSources(lightCount) {
  const vertexSource = lightingFunctionSource(lightCount) + `
uniform mat4 viewProjection;
attribute vec3 worldPosition;
attribute vec3 faceCentroid;
attribute vec3 faceNormal;
varying vec3 faceColor;

void main() {
  faceColor = illuminate(faceCentroid, faceNormal, false);
  gl_Position = viewProjection * vec4(worldPosition, 1.0);
}
`;
  const fragmentSource = `
precision highp float;
varying vec3 faceColor;

void main() {
  gl_FragColor = vec4(faceColor, 1.0);
}
`;
  return { vertexSource: vertexSource, fragmentSource: fragmentSource };
}

function perPixelProgramSources(lightCount) {
  const vertexSource = `
precision highp float;
uniform mat4 viewProjection;
attribute vec3 worldPosition;
attribute vec3 worldNormal;
varying vec3 surfacePosition;
varying vec3 surfaceNormal;

void main() {
  surfacePosition = worldPosition;
  surfaceNormal = worldNormal;
  gl_Position = viewProjection * vec4(worldPosition, 1.0);
}
`;
  const fragmentSource = lightingFunctionSource(lightCount) + `
varying vec3 surfacePosition;
varying vec3 surfaceNormal;

void main() {
  gl_FragColor = vec4(illuminate(surfacePosition, normalize(surfaceNormal), true), 1.0);
}
`;
  return { vertexSource: vertexSource, fragmentSource: fragmentSource };
}
