#ifndef IRremote_h
#define IRremote_h

// Infrared remote control: send and receive on common protocols.
// Works with 38kHz infrared receiver modules.

#define NEC 1
#define SONY 2
#define RC5 3

typedef struct {
  unsigned char protocol;
  unsigned long value;
  unsigned char bits;
} decode_results;

class IRrecv {
public:
  IRrecv(int receivePin);
  void enableIRIn();
  bool decode(decode_results *results);
  void resume();
};

class IRsend {
public:
  void sendNEC(unsigned long data, int nbits);
  void sendSony(unsigned long data, int nbits);
};

#endif
