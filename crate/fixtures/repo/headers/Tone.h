#ifndef Tone_h
#define Tone_h

// Square wave generation on a digital pin, used with piezo speakers.

#define NOTE_C4 262
#define NOTE_D4 294
#define NOTE_E4 330
#define NOTE_F4 349
#define NOTE_G4 392
#define NOTE_A4 440
#define NOTE_B4 494

class Tone {
public:
  void begin(unsigned char tonePin);
  void play(unsigned int frequency);
  void play(unsigned int frequency, unsigned long duration);
  void stop();
  bool isPlaying();
private:
  unsigned char pin;
};

#endif
