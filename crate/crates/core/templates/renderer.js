// WebGL renderer for the scene in scene_data.js: buffer setup, the draw
// loop and a mouse-orbit camera.

// Components of the headlight used when the scene declares no lights.
const HEADLIGHT_AMBIENT = {{HEADLIGHT_AMBIENT}};
const HEADLIGHT_DIFFUSE = {{HEADLIGHT_DIFFUSE}};
const HEADLIGHT_SPECULAR = {{HEADLIGHT_SPECULAR}};

function compileShader(gl, shaderType, source) {
  const shader = gl.createShader(shaderType);
  gl.shaderSource(shader, source);
  gl.compileShader(shader);
  if (!gl.getShaderParameter(shader, gl.COMPILE_STATUS)) {
    throw new Error("shader compilation failed: " + gl.getShaderInfoLog(shader));
  }
  return shader;
}

function linkProgram(gl, sources) {
  const program = gl.createProgram();
  gl.attachShader(program, compileShader(gl, gl.VERTEX_SHADER, sources.vertexSource));
  gl.attachShader(program, compileShader(gl, gl.FRAGMENT_SHADER, sources.fragmentSource));
  gl.linkProgram(program);
  if (!gl.getProgramParameter(program, gl.LINK_STATUS)) {
    throw new Error("shader linking failed: " + gl.getProgramInfoLog(program));
  }
  return program;
}

// The scene's lights, or a headlight shining along the view direction.
function effectiveLights(scene) {
  if (scene.lights.length > 0) {
    return scene.lights;
  }
  const camera = scene.camera;
  return [{
    kind: "directional",
    parameters: {
      position: camera.eye,
      direction: normalizeVector(subtractVectors(camera.target, camera.eye)),
    },
    components: {
      ambient: HEADLIGHT_AMBIENT,
      diffuse: HEADLIGHT_DIFFUSE,
      specular: HEADLIGHT_SPECULAR,
    },
  }];
}

function readVertex(flatArray, index) {
  return [flatArray[index * 3], flatArray[index * 3 + 1], flatArray[index * 3 + 2]];
}

// Move the mesh into world space once; the shaders only need the
// view-projection matrix afterwards.
function worldSpaceVertices(sceneObject) {
  const mesh = sceneObject.mesh;
  const normalRows = normalMatrixRows(sceneObject.model_matrix);
  const vertexCount = mesh.positions.length / 3;
  const positions = [];
  const normals = [];
  for (let i = 0; i < vertexCount; i++) {
    positions.push(transformPoint(sceneObject.model_matrix, readVertex(mesh.positions, i)));
    normals.push(transformNormal(normalRows, readVertex(mesh.normals, i)));
  }
  return { positions: positions, normals: normals };
}

// Geometric normal of a triangle, flipped to agree with its vertex normals.
function orientedFaceNormal(corners, cornerNormals) {
  const geometric = normalizeVector(crossProduct(
    subtractVectors(corners[1], corners[0]),
    subtractVectors(corners[2], corners[0]),
  ));
  const reference = addVectors(addVectors(cornerNormals[0], cornerNormals[1]), cornerNormals[2]);
  if (vectorLength(geometric) === 0) {
    return normalizeVector(reference);
  }
  return dotProduct(geometric, reference) < 0 ? scaleVector(geometric, -1) : geometric;
}

// Expand indexed geometry into flat attribute arrays for drawArrays.
function buildAttributeArrays(sceneObject, shadingName) {
  const world = worldSpaceVertices(sceneObject);
  const mesh = sceneObject.mesh;
  const attributes = { worldPosition: [], worldNormal: [], faceCentroid: [], faceNormal: [] };
  const pushVertex = function (index) {
    attributes.worldPosition.push(...world.positions[index]);
    attributes.worldNormal.push(...world.normals[index]);
  };

  if (sceneObject.display_mode === "triangles") {
    for (let i = 0; i < mesh.triangles.length; i += 3) {
      const cornerIndices = [mesh.triangles[i], mesh.triangles[i + 1], mesh.triangles[i + 2]];
      cornerIndices.forEach(pushVertex);
      if (shadingName === "flat") {
        const corners = cornerIndices.map(function (index) { return world.positions[index]; });
        const cornerNormals = cornerIndices.map(function (index) { return world.normals[index]; });
        const centroid = scaleVector(addVectors(addVectors(corners[0], corners[1]), corners[2]), 1 / 3);
        const normal = orientedFaceNormal(corners, cornerNormals);
        for (let corner = 0; corner < 3; corner++) {
          attributes.faceCentroid.push(...centroid);
          attributes.faceNormal.push(...normal);
        }
      }
    }
  } else if (sceneObject.display_mode === "lines") {
    mesh.edges.forEach(function (vertexIndex) {
      pushVertex(vertexIndex);
    });
  } else {
    for (let i = 0; i < world.positions.length; i++) {
      pushVertex(i);
    }
  }
  return attributes;
}

function createArrayBuffer(gl, values) {
  const buffer = gl.createBuffer();
  gl.bindBuffer(gl.ARRAY_BUFFER, buffer);
  gl.bufferData(gl.ARRAY_BUFFER, new Float32Array(values), gl.STATIC_DRAW);
  return buffer;
}

function uploadObject(gl, sceneObject, shadingName) {
  const attributes = buildAttributeArrays(sceneObject, shadingName);
  const buffers = {};
  Object.keys(attributes).forEach(function (attributeName) {
    if (attributes[attributeName].length > 0) {
      buffers[attributeName] = createArrayBuffer(gl, attributes[attributeName]);
    }
  });
  const primitiveTypes = { triangles: gl.TRIANGLES, lines: gl.LINES, points: gl.POINTS };
  return {
    sceneObject: sceneObject,
    buffers: buffers,
    primitiveType: primitiveTypes[sceneObject.display_mode],
    vertexCount: attributes.worldPosition.length / 3,
  };
}

function setLightUniforms(gl, program, lights) {
  const location = function (uniformName) {
    return gl.getUniformLocation(program, uniformName);
  };
  const flatten = function (vectors) {
    return new Float32Array([].concat(...vectors));
  };
  gl.uniform1iv(location("lightKinds"), lights.map(function (light) { return LIGHT_KIND_CODES[light.kind]; }));
  gl.uniform3fv(location("lightPositions"), flatten(lights.map(function (light) {
    return light.parameters.position;
  })));
  gl.uniform3fv(location("lightDirections"), flatten(lights.map(function (light) {
    return light.parameters.direction || [0, 0, -1];
  })));
  gl.uniform1fv(location("lightCutoffCosines"), lights.map(function (light) {
    const cutoffDegrees = light.parameters.cutoff_deg === undefined ? 180 : light.parameters.cutoff_deg;
    return Math.cos((cutoffDegrees * Math.PI) / 180);
  }));
  gl.uniform1fv(location("lightExponents"), lights.map(function (light) {
    return light.parameters.exponent || 0;
  }));
  gl.uniform3fv(location("lightAmbients"), flatten(lights.map(function (light) { return light.components.ambient; })));
  gl.uniform3fv(location("lightDiffuses"), flatten(lights.map(function (light) { return light.components.diffuse; })));
  gl.uniform3fv(location("lightSpeculars"), flatten(lights.map(function (light) {
    return light.components.specular;
  })));
}

function setMaterialUniforms(gl, program, material) {
  gl.uniform3fv(gl.getUniformLocation(program, "materialAmbient"), material.ambient);
  gl.uniform3fv(gl.getUniformLocation(program, "materialDiffuse"), material.diffuse);
  gl.uniform3fv(gl.getUniformLocation(program, "materialSpecular"), material.specular);
  gl.uniform1f(gl.getUniformLocation(program, "materialShininess"), material.shininess);
}

function bindAttribute(gl, program, attributeName, buffer) {
  const attributeLocation = gl.getAttribLocation(program, attributeName);
  if (attributeLocation < 0) {
    return null;
  }
  gl.bindBuffer(gl.ARRAY_BUFFER, buffer);
  gl.enableVertexAttribArray(attributeLocation);
  gl.vertexAttribPointer(attributeLocation, 3, gl.FLOAT, false, 0, 0);
  return attributeLocation;
}

// Start the orbit at the scene camera: angles measured around its target.
function initialOrbit(camera) {
  const offset = subtractVectors(camera.eye, camera.target);
  const distance = vectorLength(offset);
  return {
    target: camera.target,
    distance: distance,
    azimuth: Math.atan2(offset[0], offset[2]),
    elevation: Math.asin(offset[1] / distance),
  };
}

function orbitEyePosition(orbit) {
  const horizontal = Math.cos(orbit.elevation) * orbit.distance;
  return addVectors(orbit.target, [
    horizontal * Math.sin(orbit.azimuth),
    orbit.distance * Math.sin(orbit.elevation),
    horizontal * Math.cos(orbit.azimuth),
  ]);
}

function createSceneRenderer(canvas, scene) {
  const gl = canvas.getContext("webgl", { antialias: false });
  if (!gl) {
    throw new Error("WebGL is not available in this browser");
  }
  const lights = effectiveLights(scene);
  const programs = {
    flat: linkProgram(gl, flatProgramSources(lights.length)),
    vertexColor: linkProgram(gl, vertexColorProgramSources(lights.length)),
    perPixel: linkProgram(gl, perPixelProgramSources(lights.length)),
  };
  const uploadedObjects = scene.objects.map(function (sceneObject) {
    return uploadObject(gl, sceneObject, scene.shading);
  });
  const orbit = initialOrbit(scene.camera);
  let framePending = false;

  function programFor(uploaded) {
    if (uploaded.sceneObject.display_mode !== "triangles") {
      return { program: programs.vertexColor, useBlinnHighlight: scene.shading === "blinn-phong" };
    }
    if (scene.shading === "flat") {
      return { program: programs.flat, useBlinnHighlight: false };
    }
    if (scene.shading === "gouraud") {
      return { program: programs.vertexColor, useBlinnHighlight: false };
    }
    return { program: programs.perPixel, useBlinnHighlight: true };
  }

  function drawFrame() {
    framePending = false;
    const pixelRatio = window.devicePixelRatio || 1;
    canvas.width = Math.max(1, Math.round(canvas.clientWidth * pixelRatio));
    canvas.height = Math.max(1, Math.round(canvas.clientHeight * pixelRatio));
    gl.viewport(0, 0, canvas.width, canvas.height);

    const clearColor = scene.clear_color;
    gl.clearColor(clearColor[0], clearColor[1], clearColor[2], 1);
    gl.enable(gl.DEPTH_TEST);
    gl.depthFunc(gl.LESS);
    gl.clear(gl.COLOR_BUFFER_BIT | gl.DEPTH_BUFFER_BIT);

    const camera = scene.camera;
    const eye = orbitEyePosition(orbit);
    const projection = perspectiveMatrix(camera.fov_y_deg, canvas.width / canvas.height, camera.near, camera.far);
    const viewProjection = multiplyMatrices(projection, lookAtMatrix(eye, orbit.target, camera.up));

    uploadedObjects.forEach(function (uploaded) {
      const choice = programFor(uploaded);
      const program = choice.program;
      gl.useProgram(program);
      gl.uniformMatrix4fv(gl.getUniformLocation(program, "viewProjection"), false, viewProjection);
      gl.uniform3fv(gl.getUniformLocation(program, "eyePosition"), eye);
      gl.uniform1i(gl.getUniformLocation(program, "useBlinnHighlight"), choice.useBlinnHighlight ? 1 : 0);
      setLightUniforms(gl, program, lights);
      setMaterialUniforms(gl, program, uploaded.sceneObject.material);
      const enabledLocations = Object.keys(uploaded.buffers)
        .map(function (attributeName) {
          return bindAttribute(gl, program, attributeName, uploaded.buffers[attributeName]);
        })
        .filter(function (attributeLocation) { return attributeLocation !== null; });
      gl.drawArrays(uploaded.primitiveType, 0, uploaded.vertexCount);
      enabledLocations.forEach(function (attributeLocation) {
        gl.disableVertexAttribArray(attributeLocation);
      });
    });
  }

  return {
    orbit: orbit,
    requestFrame: function () {
      if (!framePending) {
        framePending = true;
        window.requestAnimationFrame(drawFrame);
      }
    },
  };
}

// Drag to orbit around the target, scroll to zoom.
function attachOrbitControls(canvas, sceneRenderer) {
  const orbit = sceneRenderer.orbit;
  const elevationLimit = Math.PI / 2 - 0.01;
  let lastPointer = null;

  canvas.addEventListener("mousedown", function (event) {
    lastPointer = [event.clientX, event.clientY];
    canvas.style.cursor = "grabbing";
  });
  window.addEventListener("mouseup", function () {
    lastPointer = null;
    canvas.style.cursor = "grab";
  });
  window.addEventListener("mousemove", function (event) {
    if (lastPointer === null) {
      return;
    }
    const deltaX = event.clientX - lastPointer[0];
    const deltaY = event.clientY - lastPointer[1];
    lastPointer = [event.clientX, event.clientY];
    orbit.azimuth -= deltaX * 0.01;
    orbit.elevation = Math.max(-elevationLimit, Math.min(elevationLimit, orbit.elevation + deltaY * 0.01));
    sceneRenderer.requestFrame();
  });
  canvas.addEventListener("wheel", function (event) {
    event.preventDefault();
    orbit.distance = Math.max(0.1, orbit.distance * Math.exp(event.deltaY * 0.001));
    sceneRenderer.requestFrame();
  }, { passive: false });
  window.addEventListener("resize", sceneRenderer.requestFrame);
}
