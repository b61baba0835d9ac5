#ifndef SoftwareSerial_h
#define SoftwareSerial_h

// Bit-banged serial on arbitrary digital pins.

#define _SS_MAX_RX_BUFF 64

class SoftwareSerial {
public:
  SoftwareSerial(unsigned char receivePin, unsigned char transmitPin);
  void begin(long speed);
  bool listen();
  void end();
  bool isListening();
  bool overflow();
  int peek();
  int read();
  int available();
  unsigned long write(unsigned char byte);
private:
  unsigned char rxPin;
  unsigned char txPin;
};

#endif
