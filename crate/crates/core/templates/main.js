// Entry point: build the renderer for the embedded scene once the page has
// loaded, and report problems on the page instead of failing silently.

window.addEventListener("load", function startScene() {
  const canvas = document.getElementById("scene-canvas");
  const message = document.getElementById("scene-message");
  try {
    const sceneRenderer = createSceneRenderer(canvas, sceneDocument);
    attachOrbitControls(canvas, sceneRenderer);
    sceneRenderer.requestFrame();
  } catch (error) {
    message.textContent = error.message;
  }
});
