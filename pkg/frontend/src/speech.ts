// Optional spoken output for generated sentences, using the browser's
// built-in speech synthesis when present. Returns null where unsupported so
// callers can simply skip the hookup.

export function browserSpeech(): ((text: string) => void) | null {
  if (typeof globalThis.speechSynthesis === "undefined") return null;
  const synth = globalThis.speechSynthesis;
  return (text: string) => {
    synth.cancel(); // a fresh sentence replaces any half-spoken one
    synth.speak(new SpeechSynthesisUtterance(text));
  };
}
